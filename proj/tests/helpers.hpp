#pragma once

#include <twistor/twistor.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace testutil {

using namespace twistor;

// Random connected graph: a random spanning tree plus extra edges. Labels are
// zero-padded indices so vertex order equals index order.
inline Graph random_connected_graph(CounterRng& rng, int n, double extra = 0.3) {
    int w = n < 11 ? 1 : 2;
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back(detail::zero_pad(i, w));
    std::vector<std::pair<std::string, std::string>> es;
    std::set<std::pair<int, int>> seen;
    for (int i = 1; i < n; ++i) {
        int p = int(rng.next_u64() % std::uint64_t(i));
        es.emplace_back(vs[p], vs[i]);
        seen.emplace(p, i);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < extra && seen.emplace(i, j).second)
                es.emplace_back(vs[i], vs[j]);
    return build_graph(vs, es);
}

inline Rational random_rational(CounterRng& rng, int num_lim = 6, int den_lim = 4) {
    int num = int(rng.next_u64() % std::uint64_t(2 * num_lim + 1)) - num_lim;
    int den = 1 + int(rng.next_u64() % std::uint64_t(den_lim));
    return Rational(num) / den;
}

inline GaussianRational random_gaussian_rational(CounterRng& rng) {
    return GaussianRational(random_rational(rng), random_rational(rng));
}

inline Complex random_complex(CounterRng& rng) {
    return Complex(rng.uniform_pm2(), rng.uniform_pm2());
}

// The second holomorphic seed on the cube: (a xor b) + sqrt(2) i c over labels
// "abc". Not affine-equivalent to the bundled cube values (it takes only two
// values on each face spanned by the first two coordinates); it is the seed
// whose evolution step has an exactly consistent sign assignment.
inline VertexFunction<Complex> cube_xor_seed(const Graph& g) {
    VertexFunction<Complex> phi(g.n());
    for (int x = 0; x < g.n(); ++x) {
        const std::string& L = g.label(x);
        int a = L[0] - '0', b = L[1] - '0', c = L[2] - '0';
        phi[x] = Complex(a ^ b, std::sqrt(2.0) * c);
    }
    return phi;
}

// Run a shell command, capturing stdout; returns the process exit code.
// stdin is fed from a temp file when input is nonempty.
struct CliResult {
    int exit_code = -1;
    std::string out;
};

inline std::string cli_path() {
    const char* p = std::getenv("TWISTOR_CLI");
    if (!p || !*p) throw std::runtime_error("TWISTOR_CLI not set; run through ctest");
    return p;
}

inline CliResult run_command(const std::string& command, const std::string& input = "") {
    std::string cmd = command;
    std::string tmp;
    if (!input.empty()) {
        tmp = "/tmp/twistor_test_in_" + std::to_string(::getpid()) + "_" +
              std::to_string(std::uintptr_t(&cmd) & 0xffff);
        std::ofstream f(tmp, std::ios::binary);
        f << input;
        f.close();
        cmd += " < " + tmp;
    }
    CliResult res;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = ::pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!tmp.empty()) std::remove(tmp.c_str());
    return res;
}

} // namespace testutil

// Acceptance suite: runs every family-level requirement end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "eclrc/eclrc.hpp"

using namespace eclrc;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
        body();
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = e.what();
        ++failures;
    }
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "CRITERION " << number << " [" << verdict << "] " << name << " (" << ms << " ms)";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void require_fast(std::chrono::steady_clock::time_point t0, long limit_ms, const std::string& what) {
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    require(ms < limit_ms, what + " took " + std::to_string(ms) + " ms");
}

int run_tool(const std::string& args) {
    std::string cmd = std::string(LRC_TOOL_PATH) + " " + args;
    int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

uint64_t theorem11_ell_max(uint64_t q) { return (q + 2 * isqrt_u64(q)) / 3; }

// codes built during the sweeps, reused for the repair criterion
std::vector<LrcCode> built_codes;

void sweep_theorem11(uint64_t p, unsigned a) {
    FieldPtr F = Field::create(p, a);
    const uint64_t q = F->q();
    ConstructionContext ctx = locality2_context(F);
    require(ctx.fiber_count() == theorem11_ell_max(q),
            "fiber count != floor((q+2sqrt(q))/3) at q=" + std::to_string(q));
    for (int ell = 1; ell <= static_cast<int>(ctx.fiber_count()); ++ell) {
        for (int t = 0; t < ell; ++t) {
            LrcCode code = build_locality2(F, ctx, t, ell);
            require(code.n == 3 * ell && code.k == 2 * t + 1, "wrong [n,k] in the locality-2 sweep");
            VerificationReport rep = certify(code);
            require(rep.locality_ok && rep.submatrix_ok, "structural check failed in the sweep");
            require(rep.singleton_bound == code.n - 3 * t, "bound mismatch in the sweep");
            require(rep.optimal, "instance not optimal at q=" + std::to_string(q) +
                                     " t=" + std::to_string(t) + " ell=" + std::to_string(ell));
            if (rep.d_exhaustive)
                require(*rep.d_exhaustive == code.n - 3 * t,
                        "exhaustive distance != n-3t at q=" + std::to_string(q) + " t=" + std::to_string(t) +
                            " ell=" + std::to_string(ell));
            built_codes.push_back(std::move(code));
        }
    }
}

void sweep_theorem12_r3(uint64_t p, unsigned a, size_t expected_fibers) {
    FieldPtr F = Field::create(p, a);
    ConstructionContext ctx = general_context(F, 3);
    if (expected_fibers)
        require(ctx.fiber_count() == expected_fibers,
                "fiber count != " + std::to_string(expected_fibers) + " at q=" + std::to_string(F->q()));
    const int capacity = static_cast<int>(ctx.fiber_count()) - 1;
    for (int ell = 2; ell <= capacity; ++ell) {
        for (int t = 1; t < ell; ++t) {
            LrcCode code = build_general(F, ctx, 3, t, ell);
            require(code.n == 4 * ell && code.k == 3 * t - 2, "wrong [n,k] in the locality-3 sweep");
            require(code.d_design == code.n - 4 * (t - 1), "wrong design distance in the locality-3 sweep");
            VerificationReport rep = certify(code);
            require(rep.locality_ok && rep.submatrix_ok && rep.optimal,
                    "locality-3 instance failed at q=" + std::to_string(F->q()) + " t=" + std::to_string(t) +
                        " ell=" + std::to_string(ell));
            require(rep.singleton_bound == code.d_design, "bound != design distance");
            if (rep.d_exhaustive)
                require(*rep.d_exhaustive == code.d_design, "exhaustive distance != design distance");
            built_codes.push_back(std::move(code));
        }
    }
}

}  // namespace

int main() {
    std::cout << "acceptance suite (tool: " << LRC_TOOL_PATH << ")\n";
    fs::path work = fs::temp_directory_path() / "eclrc_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    criterion(1, "golden [6,3,3] example over F_4", [&] {
        auto t0 = std::chrono::steady_clock::now();
        fs::path artifact = work / "golden.json";
        require(run_tool("construct --q 4 --r 2 --t 1 --ell 2 --out " + artifact.string() +
                         " > /dev/null") == 0,
                "construct exited nonzero");
        require(run_tool("verify " + artifact.string() + " > " + (work / "report.json").string()) == 0,
                "verify did not report optimal");
        LrcCode code = load_artifact(artifact);
        require(code.n == 6 && code.k == 3 && code.r == 2 && code.d_design == 3, "wrong parameters");
        // row space must equal the span of the published matrix
        const Field& F = *code.field;
        std::vector<std::vector<uint64_t>> paper{{1, 1, 1, 1, 1, 1}, {2, 2, 2, 3, 3, 3}, {1, 2, 3, 1, 2, 3}};
        Mat stacked(&F, 6, 6);
        for (size_t r = 0; r < 3; ++r)
            for (size_t c = 0; c < 6; ++c) {
                stacked.at(r, c) = paper[r][c];
                stacked.at(r + 3, c) = code.generator.at(r, c);
            }
        require(mat_rank(code.generator) == 3, "generator rank != 3");
        require(mat_rank(stacked) == 3, "row space differs from the published matrix");
        VerificationReport rep = certify(code);
        require(rep.optimal && rep.d_exhaustive && *rep.d_exhaustive == 3,
                "verification missed optimal/d=3");
        require_fast(t0, 1000, "criterion 1");
        // CLI error contract: odd exponent is a usage error, tampering flips verify to exit 1
        require(run_tool("construct --q 8 --r 2 --t 1 --ell 2 --out " + (work / "x.json").string() +
                         " 2> " + (work / "err.txt").string()) == 2,
                "q=8 should exit 2");
        require(slurp(work / "err.txt").find("a must be even") != std::string::npos,
                "q=8 diagnostic should name the violated precondition");
        ordered_json j = code_to_json(code);
        j["generator"][1][2] = elem_to_json(F, F.add(code.generator.at(1, 2), 1));
        atomic_write(work / "tampered.json", j.dump(2));
        require(run_tool("verify " + (work / "tampered.json").string() + " > /dev/null") == 1,
                "tampered artifact should exit 1");
    });

    criterion(2, "point counts of the catalog curves", [&] {
        auto t0 = std::chrono::steady_clock::now();
        CurveSpec e4{Field::create(2, 2), 0, 0, 1, 0, 0};
        require(point_count(e4) == 9, "y^2+y=x^3 over F_4");
        CurveSpec e16{Field::create(2, 4), 0, 0, 1, 0, 0};
        require(point_count(e16) == 9, "y^2+y=x^3 over F_16");
        require(point_count(maximal_curve(Field::create(2, 4)).curve) == 25, "F_16 twist");
        require(point_count(maximal_curve(Field::create(2, 6)).curve) == 81, "catalog curve over F_64");
        CurveSpec e9{Field::create(3, 2), 0, 0, 0, 1, 0};
        require(point_count(e9) == 16, "y^2=x^3+x over F_9");
        require_fast(t0, 1000, "criterion 2");
    });

    criterion(3, "automorphism group sizes", [&] {
        auto t0 = std::chrono::steady_clock::now();
        require(enumerate_automorphisms(maximal_curve(Field::create(2, 2))).order() == 24, "char 2");
        require(enumerate_automorphisms(maximal_curve(Field::create(2, 4))).order() == 24, "char 2 twist");
        require(enumerate_automorphisms(maximal_curve(Field::create(3, 2))).order() == 12, "char 3");
        require(enumerate_automorphisms(maximal_curve(Field::create(5, 2))).order() == 6, "p=2 mod 3");
        require(enumerate_automorphisms(maximal_curve(Field::create(7, 2))).order() == 4, "p=3 mod 4");
        require_fast(t0, 1000, "criterion 3");
    });

    criterion(4, "Theorem 1.1 family sweep, q in {4, 9, 16, 25}", [&] {
        sweep_theorem11(2, 2);
        sweep_theorem11(3, 2);
        sweep_theorem11(2, 4);
        sweep_theorem11(5, 2);
    });

    criterion(5, "Theorem 1.2(i) sweeps: q = 16, 64, 49 with r = 3", [&] {
        sweep_theorem12_r3(2, 4, 0);
        sweep_theorem12_r3(2, 6, 20);  // the paper's 20-fiber example
        sweep_theorem12_r3(7, 2, 0);
    });

    criterion(6, "Theorem 1.2(ii)-(v) smoke set", [&] {
        struct Row {
            uint64_t p;
            unsigned a;
            int r;
        };
        for (auto [p, a, r] : {Row{3, 4, 5}, Row{2, 6, 7}, Row{3, 6, 11}, Row{2, 12, 23}}) {
            FieldPtr F = Field::create(p, a);
            LrcCode code = build_general(F, r, 2, 3);  // t=2, ell=3
            require(code.k == r * 2 - r + 1, "wrong dimension for r=" + std::to_string(r));
            VerificationReport rep = certify(code);
            require(rep.locality_ok && rep.submatrix_ok, "structural check failed for r=" + std::to_string(r));
            require(rep.optimal, "bound squeeze failed for r=" + std::to_string(r));
            require(!rep.d_exhaustive || *rep.d_exhaustive == code.d_design,
                    "exhaustive oracle disagrees for r=" + std::to_string(r));
            built_codes.push_back(std::move(code));
        }
    });

    criterion(7, "repair round trips (library and CLI shards)", [&] {
        std::mt19937_64 rng(20260810);
        require(!built_codes.empty(), "no codes were built in criteria 4-6");
        for (const auto& code : built_codes) {
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<uint64_t> msg(static_cast<size_t>(code.k));
                for (auto& m : msg) m = rng() % code.field->q();
                std::vector<uint64_t> cw = encode(code, msg);
                for (size_t i = 0; i < cw.size(); ++i) {
                    std::vector<uint64_t> damaged = cw;
                    damaged[i] = code.field->add(damaged[i], 1);  // repair must not read position i
                    if (repair(code, damaged, i) != cw[i])
                        throw std::runtime_error("repair failed at coordinate " + std::to_string(i));
                }
            }
        }
        // CLI shard round trip on 1 MiB of random data over F_256
        fs::path artifact = work / "shardcode.json";
        require(run_tool("construct --q 256 --r 2 --t 1 --ell 2 --out " + artifact.string() +
                         " > /dev/null") == 0,
                "construct over F_256 failed");
        fs::path data = work / "input.bin";
        {
            std::ofstream out(data, std::ios::binary);
            for (size_t i = 0; i < (1 << 20); ++i) out.put(static_cast<char>(rng()));
        }
        fs::path shards = work / "shards";
        require(run_tool("encode --artifact " + artifact.string() + " --in " + data.string() +
                         " --shards " + shards.string() + " > /dev/null") == 0,
                "encode failed");
        std::string original = slurp(shards / "shard_000.bin");
        require(!original.empty(), "shard 0 is empty");
        fs::remove(shards / "shard_000.bin");
        require(run_tool("repair --artifact " + artifact.string() + " --shards " + shards.string() +
                         " --lost 0 > /dev/null") == 0,
                "repair failed");
        require(slurp(shards / "shard_000.bin") == original, "repaired shard is not byte-identical");
    });

    criterion(8, "property suites", [&] {
        std::mt19937_64 rng(20260811);
        // field axioms + Frobenius
        for (auto [p, a] : std::vector<std::pair<uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 4}, {5, 2}}) {
            FieldPtr F = Field::create(p, a);
            const uint64_t q = F->q();
            for (int i = 0; i < 200; ++i) {
                uint64_t x = rng() % q, y = rng() % q, z = rng() % q;
                require(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)), "distributivity");
                require(F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z)), "associativity");
            }
            for (uint64_t x = 0; x < q; ++x) {
                require(F->pow(x, q) == x, "Frobenius fixed point");
                if (x) require(F->pow(x, q - 1) == 1, "multiplicative order");
            }
        }
        // Hasse-Weil on 100 random nonsingular curves per q in {5, 7, 9, 13}
        for (auto [p, a] : std::vector<std::pair<uint64_t, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
            FieldPtr F = Field::create(p, a);
            int made = 0;
            for (int trial = 0; made < 100 && trial < 10000; ++trial) {
                CurveSpec E{F, rng() % F->q(), rng() % F->q(), rng() % F->q(), rng() % F->q(), rng() % F->q()};
                if (!is_nonsingular(E)) continue;
                ++made;
                enumerate_points(E);  // throws errc::hasse_weil_violation on a miss
            }
            require(made == 100, "could not sample 100 nonsingular curves");
        }
        // group-law associativity on 1000 random triples
        {
            CurveSpec E = maximal_curve(Field::create(5, 2)).curve;
            auto pts = enumerate_points(E);
            for (int i = 0; i < 1000; ++i) {
                const Point &A = pts[rng() % pts.size()], &B = pts[rng() % pts.size()],
                            &C = pts[rng() % pts.size()];
                require(curve_add(E, curve_add(E, A, B), C) == curve_add(E, A, curve_add(E, B, C)),
                        "associativity");
            }
        }
        // dim L(D) = deg D on 100 random effective divisors of degree 1..6
        {
            CurveSpec E = maximal_curve(Field::create(3, 2)).curve;
            auto pts = enumerate_points(E);
            for (int trial = 0; trial < 100; ++trial) {
                DivisorSpec D;
                int deg = 1 + static_cast<int>(rng() % 6);
                for (int i = 0; i < deg; ++i) D.add(pts[rng() % pts.size()], 1);
                require(static_cast<int>(rr_basis(E, D).size()) == D.degree(), "dim L(D) != deg D");
            }
        }
        // principal divisors have degree 0
        {
            CurveSpec E = maximal_curve(Field::create(2, 2)).curve;
            for (int trial = 0; trial < 50; ++trial) {
                Poly num = poly_const(1 + rng() % 3);
                num = poly_mul(E.F(), num, Poly{{rng() % 4, 1}});
                Poly den{{rng() % 4, 1}};
                CurveFunction f = fn_make(E, num, poly_const(rng() % 4), den);
                if (f.is_zero()) continue;
                require(principal_divisor(f).degree() == 0, "principal divisor degree != 0");
            }
        }
        // z-invariance for the construction subgroup of every built code
        for (const auto& code : built_codes)
            for (const auto& s : code.prov.subgroup.elements)
                require(apply_automorphism(s, code.prov.z) == code.prov.z, "sigma(z) != z");
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}

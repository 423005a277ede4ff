#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eclrc/verify.hpp"

namespace eclrc {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON encodings (stable key order, integers only)
// ---------------------------------------------------------------------------

inline ordered_json elem_to_json(const Field& F, uint64_t v) {
    ordered_json a = ordered_json::array();
    for (uint32_t c : F.coeffs(v)) a.push_back(c);
    return a;
}

inline uint64_t elem_from_json(const Field& F, const ordered_json& j) {
    std::vector<uint32_t> c;
    for (const auto& x : j) c.push_back(x.get<uint32_t>());
    return F.from_coeffs(c);
}

inline ordered_json field_to_json(const Field& F) {
    ordered_json j;
    j["p"] = F.p();
    j["a"] = F.a();
    j["modulus"] = F.modulus();
    return j;
}

inline FieldPtr field_from_json(const ordered_json& j) {
    FieldPtr f = Field::create(j.at("p").get<uint64_t>(), j.at("a").get<unsigned>());
    if (f->modulus() != j.at("modulus").get<std::vector<uint32_t>>())
        fail(errc::format_error, "field modulus differs from the canonical modulus");
    return f;
}

inline ordered_json point_to_json(const Field& F, const Point& P) {
    if (P.inf) return ordered_json("O");
    ordered_json j;
    j["x"] = elem_to_json(F, P.x);
    j["y"] = elem_to_json(F, P.y);
    return j;
}

inline Point point_from_json(const Field& F, const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "O") fail(errc::format_error, "unknown point literal");
        return Point::infinity();
    }
    return Point::affine(elem_from_json(F, j.at("x")), elem_from_json(F, j.at("y")));
}

inline ordered_json poly_to_json(const Field& F, const Poly& p) {
    ordered_json a = ordered_json::array();
    for (uint64_t c : p.c) a.push_back(elem_to_json(F, c));
    return a;
}

inline Poly poly_from_json(const Field& F, const ordered_json& j) {
    Poly p;
    for (const auto& c : j) p.c.push_back(elem_from_json(F, c));
    poly_trim(p);
    return p;
}

inline ordered_json fn_to_json(const CurveFunction& f) {
    const Field& F = f.curve.F();
    ordered_json j;
    j["g0"] = poly_to_json(F, f.g0);
    j["g1"] = poly_to_json(F, f.g1);
    j["h"] = poly_to_json(F, f.h);
    return j;
}

inline CurveFunction fn_from_json(const CurveSpec& E, const ordered_json& j) {
    return fn_make(E, poly_from_json(E.F(), j.at("g0")), poly_from_json(E.F(), j.at("g1")),
                   poly_from_json(E.F(), j.at("h")));
}

inline ordered_json automorphism_to_json(const Automorphism& s) {
    const Field& F = s.curve.F();
    ordered_json j;
    j["shape"] = shape_name(s.shape);
    j["u"] = elem_to_json(F, s.u);
    j["s"] = elem_to_json(F, s.s);
    j["t"] = elem_to_json(F, s.t);
    return j;
}

inline Automorphism automorphism_from_json(const CurveSpec& E, const ordered_json& j) {
    const Field& F = E.F();
    std::string shape = j.at("shape").get<std::string>();
    AutShape sh;
    if (shape == "char2")
        sh = AutShape::char2;
    else if (shape == "char3")
        sh = AutShape::char3;
    else if (shape == "large_char")
        sh = AutShape::large_char;
    else
        fail(errc::format_error, "unknown automorphism shape");
    return detail::from_params(E, sh, elem_from_json(F, j.at("u")), elem_from_json(F, j.at("s")),
                               elem_from_json(F, j.at("t")));
}

inline ordered_json report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["k_actual"] = r.k_actual;
    j["d_design"] = r.d_design;
    if (r.d_exhaustive)
        j["d_exhaustive"] = *r.d_exhaustive;
    else
        j["d_exhaustive"] = "Skipped";
    j["singleton_bound"] = r.singleton_bound;
    j["rate_ok"] = r.rate_ok;
    j["locality_ok"] = r.locality_ok;
    j["submatrix_ok"] = r.submatrix_ok;
    j["optimal"] = r.optimal;
    j["work_bound"] = r.work_bound;
    return j;
}

inline ordered_json code_to_json(const LrcCode& code) {
    const Field& F = *code.field;
    ordered_json j;
    j["format_version"] = 1;
    j["field"] = field_to_json(F);
    ordered_json curve;
    curve["a1"] = elem_to_json(F, code.prov.entry.curve.a1);
    curve["a2"] = elem_to_json(F, code.prov.entry.curve.a2);
    curve["a3"] = elem_to_json(F, code.prov.entry.curve.a3);
    curve["a4"] = elem_to_json(F, code.prov.entry.curve.a4);
    curve["a6"] = elem_to_json(F, code.prov.entry.curve.a6);
    j["curve"] = curve;
    j["family"] = family_name(code.prov.entry.family);
    j["family_param"] = elem_to_json(F, code.prov.entry.param);
    j["expected_point_count"] = code.prov.entry.expected_count;
    ordered_json subgroup = ordered_json::array();
    for (const auto& s : code.prov.subgroup.elements) subgroup.push_back(automorphism_to_json(s));
    j["subgroup"] = subgroup;
    ordered_json fibers = ordered_json::array();
    for (const auto& fib : code.prov.fibers) {
        ordered_json f = ordered_json::array();
        for (const auto& P : fib) f.push_back(point_to_json(F, P));
        fibers.push_back(f);
    }
    j["fibers"] = fibers;
    ordered_json excl = ordered_json::array();
    for (const auto& P : code.prov.excluded) excl.push_back(point_to_json(F, P));
    j["excluded"] = excl;
    ordered_json pole = ordered_json::array();
    for (const auto& P : code.prov.pole_fiber) pole.push_back(point_to_json(F, P));
    j["pole_fiber"] = pole;
    j["z"] = fn_to_json(code.prov.z);
    ordered_json ws = ordered_json::array();
    for (const auto& w : code.prov.w) ws.push_back(fn_to_json(w));
    j["w"] = ws;
    ordered_json basis = ordered_json::array();
    for (const auto& b : code.prov.basis) basis.push_back(fn_to_json(b));
    j["basis"] = basis;
    j["construction"] = code.prov.construction;
    j["t"] = code.prov.t;
    j["ell"] = code.prov.ell;
    ordered_json declared;
    declared["n"] = code.n;
    declared["k"] = code.k;
    declared["d"] = code.d_design;
    declared["r"] = code.r;
    j["declared"] = declared;
    ordered_json gen = ordered_json::array();
    for (size_t r = 0; r < code.generator.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (size_t c = 0; c < code.generator.cols(); ++c) row.push_back(elem_to_json(F, code.generator.at(r, c)));
        gen.push_back(row);
    }
    j["generator"] = gen;
    j["repair_groups"] = code.repair_groups;
    j["verification"] = nullptr;
    return j;
}

inline LrcCode code_from_json(const ordered_json& j) {
    if (j.at("format_version").get<int>() != 1) fail(errc::format_error, "unsupported format version");
    LrcCode code;
    code.field = field_from_json(j.at("field"));
    const Field& F = *code.field;
    CurveSpec E;
    E.field = code.field;
    E.a1 = elem_from_json(F, j.at("curve").at("a1"));
    E.a2 = elem_from_json(F, j.at("curve").at("a2"));
    E.a3 = elem_from_json(F, j.at("curve").at("a3"));
    E.a4 = elem_from_json(F, j.at("curve").at("a4"));
    E.a6 = elem_from_json(F, j.at("curve").at("a6"));
    code.prov.entry.curve = E;
    std::string fam = j.at("family").get<std::string>();
    bool found = false;
    for (CurveFamily f : {CurveFamily::char2_basic, CurveFamily::char2_twist, CurveFamily::char3_lemma214,
                          CurveFamily::p3mod4_lemma214, CurveFamily::p2mod3_lemma215})
        if (fam == family_name(f)) {
            code.prov.entry.family = f;
            found = true;
        }
    if (!found) fail(errc::format_error, "unknown curve family");
    code.prov.entry.param = elem_from_json(F, j.at("family_param"));
    code.prov.entry.expected_count = j.at("expected_point_count").get<uint64_t>();
    for (const auto& s : j.at("subgroup"))
        code.prov.subgroup.elements.push_back(automorphism_from_json(E, s));
    for (const auto& fib : j.at("fibers")) {
        std::vector<Point> f;
        for (const auto& P : fib) f.push_back(point_from_json(F, P));
        code.prov.fibers.push_back(std::move(f));
    }
    for (const auto& P : j.at("excluded")) code.prov.excluded.push_back(point_from_json(F, P));
    for (const auto& P : j.at("pole_fiber")) code.prov.pole_fiber.push_back(point_from_json(F, P));
    code.prov.z = fn_from_json(E, j.at("z"));
    for (const auto& w : j.at("w")) code.prov.w.push_back(fn_from_json(E, w));
    for (const auto& b : j.at("basis")) code.prov.basis.push_back(fn_from_json(E, b));
    code.prov.construction = j.at("construction").get<std::string>();
    code.prov.t = j.at("t").get<int>();
    code.prov.ell = j.at("ell").get<int>();
    code.n = j.at("declared").at("n").get<int>();
    code.k = j.at("declared").at("k").get<int>();
    code.d_design = j.at("declared").at("d").get<int>();
    code.r = j.at("declared").at("r").get<int>();
    const auto& gen = j.at("generator");
    code.generator = Mat(&F, gen.size(), gen.empty() ? 0 : gen.at(0).size());
    for (size_t r = 0; r < code.generator.rows(); ++r) {
        if (gen.at(r).size() != code.generator.cols()) fail(errc::format_error, "ragged generator matrix");
        for (size_t c = 0; c < code.generator.cols(); ++c)
            code.generator.at(r, c) = elem_from_json(F, gen.at(r).at(c));
    }
    code.repair_groups = j.at("repair_groups").get<std::vector<std::vector<size_t>>>();
    if (code.generator.rows() != static_cast<size_t>(code.k) ||
        code.generator.cols() != static_cast<size_t>(code.n))
        fail(errc::format_error, "generator shape disagrees with the declared parameters");
    return code;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Write-temp-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::format_error, "cannot open " + tmp.string() + " for writing");
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) fail(errc::format_error, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void save_artifact(const LrcCode& code, const std::filesystem::path& path) {
    atomic_write(path, code_to_json(code).dump(2) + "\n");
}

inline LrcCode load_artifact(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::format_error, "cannot open " + path.string());
    ordered_json j;
    try {
        in >> j;
        return code_from_json(j);
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        fail(errc::format_error, std::string("malformed artifact: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Shards: raw element stream with an 8-byte header (magic, version, pad)
// ---------------------------------------------------------------------------

constexpr char kShardMagic[4] = {'L', 'R', 'S', '1'};
constexpr uint16_t kShardVersion = 1;

/// Bytes per field element: ceil(log2(q) / 8), big-endian packing of the
/// canonical element index.
inline size_t symbol_bytes(const Field& F) {
    uint64_t m = F.q() - 1;
    unsigned bits = 0;
    while (m) {
        ++bits;
        m >>= 1;
    }
    if (bits == 0) bits = 1;
    return (bits + 7) / 8;
}

inline void append_symbol(std::string& out, uint64_t v, size_t B) {
    for (size_t i = B; i-- > 0;) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::string shard_header(uint16_t pad) {
    std::string h(kShardMagic, 4);
    h.push_back(static_cast<char>(kShardVersion & 0xff));
    h.push_back(static_cast<char>(kShardVersion >> 8));
    h.push_back(static_cast<char>(pad & 0xff));
    h.push_back(static_cast<char>(pad >> 8));
    return h;
}

struct ShardPayload {
    uint16_t pad = 0;
    std::string data;  // raw symbol bytes
};

inline ShardPayload parse_shard(const std::string& raw, const std::string& name) {
    if (raw.size() < 8 || raw.compare(0, 4, kShardMagic, 4) != 0)
        fail(errc::format_error, "bad shard header in " + name);
    uint16_t version = static_cast<uint8_t>(raw[4]) | (static_cast<uint16_t>(static_cast<uint8_t>(raw[5])) << 8);
    if (version != kShardVersion) fail(errc::format_error, "unsupported shard version in " + name);
    ShardPayload p;
    p.pad = static_cast<uint8_t>(raw[6]) | (static_cast<uint16_t>(static_cast<uint8_t>(raw[7])) << 8);
    p.data = raw.substr(8);
    return p;
}

/// Splits input into k-symbol messages (zero padded, pad length recorded) and
/// returns the n shard files: shard j carries the j-th codeword coordinates.
inline std::vector<std::string> encode_to_shards(const LrcCode& code, const std::string& input) {
    const Field& F = *code.field;
    const size_t B = symbol_bytes(F);
    const size_t msg_bytes = static_cast<size_t>(code.k) * B;
    size_t pad = (msg_bytes - input.size() % msg_bytes) % msg_bytes;
    std::string padded = input + std::string(pad, '\0');
    std::vector<std::string> shards(static_cast<size_t>(code.n), shard_header(static_cast<uint16_t>(pad)));
    std::vector<uint64_t> msg(static_cast<size_t>(code.k));
    for (size_t off = 0; off < padded.size(); off += msg_bytes) {
        for (int i = 0; i < code.k; ++i) {
            uint64_t v = 0;
            for (size_t b = 0; b < B; ++b)
                v = (v << 8) | static_cast<uint8_t>(padded[off + static_cast<size_t>(i) * B + b]);
            if (v >= F.q())
                fail(errc::range_error,
                     "input byte group exceeds the field size; data encoding needs q = 256^m");
            msg[static_cast<size_t>(i)] = v;
        }
        std::vector<uint64_t> cw = encode(code, msg);
        for (int jj = 0; jj < code.n; ++jj) append_symbol(shards[static_cast<size_t>(jj)], cw[static_cast<size_t>(jj)], B);
    }
    return shards;
}

/// Reconstructs the lost shard from the r shards of its repair group.
/// `present` maps shard index -> payload for at least those r siblings.
inline std::string repair_shard(const LrcCode& code, const std::map<size_t, ShardPayload>& present,
                                size_t lost) {
    const Field& F = *code.field;
    const size_t B = symbol_bytes(F);
    const std::vector<size_t>* group = nullptr;
    for (const auto& g : code.repair_groups)
        for (size_t j : g)
            if (j == lost) group = &g;
    if (!group) fail(errc::index_out_of_range, "lost index not covered by a repair group");
    std::vector<size_t> siblings;
    for (size_t j : *group)
        if (j != lost) siblings.push_back(j);
    for (size_t j : siblings)
        if (!present.count(j)) fail(errc::missing_shards, "sibling shard " + std::to_string(j) + " unavailable");
    const ShardPayload& first = present.at(siblings.front());
    for (size_t j : siblings) {
        const ShardPayload& p = present.at(j);
        if (p.data.size() != first.data.size() || p.pad != first.pad)
            fail(errc::format_error, "sibling shards disagree in length or padding");
    }
    // lambda with G_I lambda = G_lost, reused across all positions
    Mat GI = code.generator.select_columns(siblings);
    std::vector<uint64_t> gl(code.generator.rows());
    for (size_t row = 0; row < code.generator.rows(); ++row) gl[row] = code.generator.at(row, lost);
    auto lambda = mat_solve(GI, gl);
    if (!lambda) fail(errc::not_repairable, "repair group columns do not span the lost column");
    std::string out = shard_header(first.pad);
    const size_t symbols = first.data.size() / B;
    for (size_t s = 0; s < symbols; ++s) {
        uint64_t acc = 0;
        for (size_t j = 0; j < siblings.size(); ++j) {
            uint64_t v = 0;
            for (size_t b = 0; b < B; ++b)
                v = (v << 8) | static_cast<uint8_t>(present.at(siblings[j]).data[s * B + b]);
            acc = F.add(acc, F.mul((*lambda)[j], v));
        }
        append_symbol(out, acc, B);
    }
    return out;
}

}  // namespace eclrc

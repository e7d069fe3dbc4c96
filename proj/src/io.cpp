#include "l0cert/io.hpp"

#include "l0cert/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace l0cert::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, "not a real number: '" + std::string(field) + "'");
    if (!std::isfinite(v)) throw ParseError(line, "non-finite value: '" + std::string(field) + "'");
    return v;
}

std::vector<std::vector<double>> read_rows(std::istream& in, bool header) {
    std::vector<std::vector<double>> rows;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (header && line == 1) continue;
        std::string_view rest = trim(text);
        if (rest.empty()) continue;
        std::vector<double> row;
        for (;;) {
            const auto comma = rest.find(',');
            row.push_back(parse_real(rest.substr(0, comma), line));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(line, "expected " + std::to_string(rows.front().size()) + " fields, found " +
                                       std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(0, "no data rows");
    return rows;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return in;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

Matrix read_matrix_csv(std::istream& in, bool header) {
    const auto rows = read_rows(in, header);
    Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return a;
}

Matrix read_matrix_csv(const std::filesystem::path& path, bool header) {
    auto in = open(path);
    return read_matrix_csv(in, header);
}

Vector read_vector_csv(std::istream& in, bool header) {
    std::vector<double> values;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (header && line == 1) continue;
        const auto field = trim(text);
        if (field.empty()) continue;
        if (field.find(',') != std::string_view::npos)
            throw ParseError(line, "response file must hold one value per line");
        values.push_back(parse_real(field, line));
    }
    if (values.empty()) throw ParseError(0, "no data rows");
    return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector read_vector_csv(const std::filesystem::path& path, bool header) {
    auto in = open(path);
    return read_vector_csv(in, header);
}

void write_matrix_csv(std::ostream& out, const Matrix& a) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out << (c ? "," : "") << fmt17(a(r, c));
        out << '\n';
    }
}

void write_vector_csv(std::ostream& out, const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << fmt17(v[i]) << '\n';
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

const char* to_string(EventType type) {
    switch (type) {
        case EventType::Enter: return "enter";
        case EventType::Leave: return "leave";
        case EventType::Terminal: return "terminal";
    }
    return "?";
}

json to_json(const Support& s) { return s.one_based(); }

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real(v[i]));
    return out;
}

json to_json(const Certificate& c) {
    json witness = json::object();
    for (const auto& [key, value] : c.witness) witness[key] = real(value);
    for (const auto& [key, values] : c.witness_vectors) {
        json arr = json::array();
        for (double v : values) arr.push_back(real(v));
        witness[key] = std::move(arr);
    }
    json out = {
        {"kind", to_string(c.kind)},
        {"verdict", to_string(c.verdict)},
        {"support", to_json(c.support)},
        {"threshold", real(c.threshold)},
        {"lambda0", c.lambda0 ? real(*c.lambda0) : json(nullptr)},
        {"witness", std::move(witness)},
    };
    if (c.lambda1) out["lambda1"] = real(*c.lambda1);
    if (!c.notes.empty()) out["notes"] = c.notes;
    return out;
}

json to_json(const PathSegment& seg) {
    json event = {{"type", to_string(seg.event.type)}};
    if (seg.event.type != EventType::Terminal) event["index"] = seg.event.index + 1;
    return {
        {"lambda_hi", real(seg.lambda_hi)},
        {"lambda_lo", real(seg.lambda_lo)},
        {"support", to_json(seg.support)},
        {"signs", seg.signs},
        {"x_at_hi", to_json(seg.x_at_hi.values)},
        {"x_at_lo", to_json(seg.x_at_lo.values)},
        {"event", std::move(event)},
    };
}

json to_json(const LassoPath& path) {
    json segments = json::array();
    for (const auto& seg : path.segments) segments.push_back(to_json(seg));
    std::vector<int> order;
    for (int i : path.selection_order) order.push_back(i + 1);
    json entries = json::array();
    for (double l : path.entry_lambdas) entries.push_back(real(l));
    return {
        {"lambda_max", real(path.lambda_max)},
        {"lambda_floor", real(path.lambda_floor)},
        {"complete", path.complete},
        {"selection_order", order},
        {"entry_lambdas", std::move(entries)},
        {"segments", std::move(segments)},
    };
}

json to_json(const OracleResult& oracle) {
    json f = json::array();
    for (double v : oracle.f_curve) f.push_back(real(v));
    json ties = json::array();
    for (const auto& s : oracle.ties) ties.push_back(to_json(s));
    return {
        {"lambda0", real(oracle.lambda0)},
        {"best_support", to_json(oracle.best_support)},
        {"best_objective", real(oracle.best_objective)},
        {"best_x", to_json(oracle.best_x.values)},
        {"f_curve", std::move(f)},
        {"ties", std::move(ties)},
        {"skipped_rank_deficient", oracle.skipped_rank_deficient},
    };
}

json to_json(const SupportCertificates& sc) {
    json out = {
        {"support", to_json(sc.support)},
        {"lambda_hi", real(sc.lambda_hi)},
        {"lambda_lo", real(sc.lambda_lo)},
        {"no_smaller_support", to_json(sc.no_smaller)},
        {"subset_of_type0", to_json(sc.subset)},
    };
    if (sc.bounded) out["subset_of_type0_bounded"] = to_json(*sc.bounded);
    return out;
}

json tables_to_json(const SigmaMinTable& sigma, const PseudoInverseGapTable* gap, int max_multiplier) {
    json s = json::object();
    for (int k = 1; k <= sigma.k_max(); ++k) s[std::to_string(k)] = real(sigma.at(k));
    json out = {{"sigma_min_sq", std::move(s)}};
    if (gap) {
        json l = json::object();
        for (int size = 1; size <= gap->max_size(); ++size)
            for (int M = 1; M <= max_multiplier; ++M)
                l["(" + std::to_string(size) + "," + std::to_string(M) + ")"] = real(gap->lambda(size, M));
        out["lambda"] = std::move(l);
    }
    return out;
}

}  // namespace l0cert::io

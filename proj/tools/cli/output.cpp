// output.cpp: table serialization and progress log

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "mtransport/errors.hpp"

namespace mt::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::string hex;
    for (unsigned int k = 0; k < len; ++k) hex += fmt::format("{:02x}", md[k]);
    return hex;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{}", x);
}

double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    return std::strtod(s.c_str(), nullptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
    return s;
}

} // namespace

void write_csv(std::ostream& out, const Table& t, const Metadata& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << ": " << one_line(v) << '\n';
    for (const auto& c : t.columns) out << c.header() << ',';
    out << "error\n";
    for (const auto& r : t.rows) {
        for (double v : r.values) out << format_number(v) << ',';
        out << csv_field(one_line(r.error)) << '\n';
    }
}

void write_json(std::ostream& out, const Table& t, const Metadata& meta) {
    using nlohmann::json;
    json doc;
    doc["metadata"] = json::object();
    for (const auto& [k, v] : meta) doc["metadata"][k] = v;
    doc["columns"] = json::array();
    for (const auto& c : t.columns) doc["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
    doc["rows"] = json::array();
    for (const auto& r : t.rows) {
        json row = json::array();
        // JSON has no NaN; failed or undefined entries become null.
        for (double v : r.values) row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        doc["rows"].push_back({{"values", row}, {"error", r.error.empty() ? json(nullptr) : json(r.error)}});
    }
    out << doc.dump(1) << '\n';
}

Sidecar::Sidecar(std::string path, std::string digest) : path_(std::move(path)), digest_(std::move(digest)) {}

std::map<int, std::vector<TableRow>> Sidecar::load() const {
    std::map<int, std::vector<TableRow>> done;
    std::ifstream in(path_);
    if (!in) return done;
    std::string line;
    if (!std::getline(in, line) || line != "digest\t" + digest_) return done;
    std::map<int, std::vector<TableRow>> pending;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag, unit;
        std::getline(ls, tag, '\t');
        std::getline(ls, unit, '\t');
        const int u = std::atoi(unit.c_str());
        if (tag == "row") {
            std::string values, error;
            std::getline(ls, values, '\t');
            std::getline(ls, error);
            TableRow r;
            std::istringstream vs(values);
            for (std::string tok; std::getline(vs, tok, ',');) r.values.push_back(parse_number(tok));
            r.error = error;
            pending[u].push_back(std::move(r));
        } else if (tag == "done") {
            done[u] = std::move(pending[u]);
            pending.erase(u);
        }
    }
    return done;
}

void Sidecar::open(bool keep) {
    if (keep) return;
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw ConfigError("output.path", fmt::format("cannot write progress file '{}'", path_));
    out << "digest\t" << digest_ << '\n';
}

void Sidecar::record(int unit, const std::vector<TableRow>& rows) {
    std::ofstream out(path_, std::ios::app);
    for (const auto& r : rows) {
        out << "row\t" << unit << '\t';
        for (std::size_t k = 0; k < r.values.size(); ++k) out << (k ? "," : "") << format_number(r.values[k]);
        out << '\t' << one_line(r.error) << '\n';
    }
    out << "done\t" << unit << '\n';
    out.flush();
}

void Sidecar::remove() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

} // namespace mt::cli

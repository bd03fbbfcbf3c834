// output.hpp: CSV/JSON writers, config digest and the resume sidecar

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tasks.hpp"

namespace mt::cli {

std::string sha256_hex(const std::string& data);

/// Shortest text that parses back to the same double; "nan", "inf" otherwise.
std::string format_number(double x);
double parse_number(const std::string& s);

struct TableRow {
    Row values; // keys followed by task values
    std::string error;
};

struct Table {
    std::vector<Column> columns;
    std::vector<TableRow> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_csv(std::ostream& out, const Table& t, const Metadata& meta);
void write_json(std::ostream& out, const Table& t, const Metadata& meta);

/// Append-only log of finished units next to the output file. A rerun with
/// the same config digest picks up the finished units instead of recomputing.
class Sidecar {
public:
    Sidecar(std::string path, std::string digest);

    /// Finished units from an earlier run with the same digest.
    std::map<int, std::vector<TableRow>> load() const;
    /// Starts a fresh log unless `keep` is set, in which case it appends.
    void open(bool keep);
    void record(int unit, const std::vector<TableRow>& rows);
    void remove();
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::string digest_;
};

} // namespace mt::cli

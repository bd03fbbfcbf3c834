// tasks.hpp: turns a scenario into independent units of work producing table rows

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace mt::cli {

struct Column {
    std::string name;
    std::string unit; // "t", "t^2", "1", ...
    std::string header() const { return name + " [" + unit + "]"; }
};

using Row = std::vector<double>;

// One unit yields one or more rows. Key values identify the rows; value
// columns come from compute(). A failed unit keeps its keys and records the
// error for each of its rows.
struct Unit {
    std::vector<Row> keys;
    std::function<std::vector<Row>()> compute;
};

struct Plan {
    std::vector<Column> key_columns;
    std::vector<Column> value_columns;
    std::vector<Unit> units;
};

Plan make_plan(const ScenarioConfig& c);

} // namespace mt::cli

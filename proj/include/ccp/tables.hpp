#pragma once

#include <string>
#include <vector>

#include "ccp/pipeline.hpp"

namespace ccp
{

//! One reproduced table cell.
struct CellReport
{
    int table = 0;
    std::string label;
    double computed = 0.0;
    double printed = 0.0;
    //! Value actually compared against: printed, near_exact, derived or
    //! closed_form (see reference_kind).
    double reference = 0.0;
    std::string reference_kind;
    double deviation = 0.0;
    bool relative = true;
    double tolerance = 0.0;
    bool pass = false;
    std::string flag;
    std::string note;
};

//! Path of the bundled table data file.
std::string default_tables_path();

/*!
 * Computes every cell of table 1, 2 or 3 and compares it with the printed
 * value under the acceptance tolerances. States that fail to compute give
 * failing cells whose note carries the error.
 */
std::vector<CellReport> reproduce_table(int table, StateCache& cache,
                                        std::string const& tables_path,
                                        unsigned threads = 0);

}  // namespace ccp

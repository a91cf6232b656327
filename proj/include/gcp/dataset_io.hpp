// File formats: hierarchy documents, object and user CSV files.
//
// Objects:  header `object_id,<attr>,...[,obj:<name>...]`, one row per
// object, multi-values separated by `|` inside a cell.  Users: same
// shape with `-` marking indifference.  `#` lines are comments.

#pragma once

#include <string>
#include <vector>

#include "gcp/model.hpp"

namespace gcp {

// Minimal CSV with double-quote quoting.
std::vector<std::string> split_csv_row(const std::string& line);
std::string join_csv_row(const std::vector<std::string>& cells);

// Loads hierarchy documents (one file per attribute).  Attribute order
// follows the file order given.
std::vector<AttributeSchema> load_hierarchies(const std::vector<std::string>& paths,
                                              const ParseOptions& opts = {});

// Parses object/user CSV text against already-loaded attributes.
// Attribute columns are matched to hierarchies by name; the column
// order of the file defines nothing, the dataset's attribute order wins.
void load_objects_csv(Dataset& ds, const std::string& text, const std::string& source);
void load_users_csv(Dataset& ds, const std::string& text, const std::string& source);

std::string serialize_objects_csv(const Dataset& ds);
std::string serialize_users_csv(const Dataset& ds);

// Directory convention: every *.hier file plus objects.csv / users.csv.
Dataset load_dataset_dir(const std::string& dir, const ParseOptions& opts = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Ground-truth ranked list: one object id per line, best first.
std::vector<std::size_t> load_ranked_list(const Dataset& ds, const std::string& text,
                                          const std::string& source);

}  // namespace gcp

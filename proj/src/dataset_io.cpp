#include "gcp/dataset_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gcp {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string join_csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        const std::string& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out += '"';
            for (char ch : c) {
                if (ch == '"') out += '"';
                out += ch;
            }
            out += '"';
        } else {
            out += c;
        }
    }
    return out;
}

std::vector<AttributeSchema> load_hierarchies(const std::vector<std::string>& paths,
                                              const ParseOptions& opts) {
    std::vector<AttributeSchema> attrs;
    for (const auto& path : paths) {
        AttributeSchema schema;
        schema.hierarchy = parse_hierarchy(read_file(path), path, opts);
        schema.name = schema.hierarchy.attribute_name;
        schema.labeling = label_hierarchy(schema.hierarchy);
        attrs.push_back(std::move(schema));
    }
    return attrs;
}

namespace {

std::vector<std::string> split_values(const std::string& cell) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : cell) {
        if (c == '|') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct CsvLayout {
    // attribute column positions, aligned with ds.attributes
    std::vector<std::size_t> attr_col;
    // objective columns as (column, name)
    std::vector<std::pair<std::size_t, std::string>> objective_cols;
    std::size_t columns = 0;
};

CsvLayout parse_header(const Dataset& ds, const std::vector<std::string>& header,
                       const std::string& source) {
    CsvLayout layout;
    layout.columns = header.size();
    layout.attr_col.assign(ds.attributes.size(), static_cast<std::size_t>(-1));
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string& name = header[c];
        if (name.rfind("obj:", 0) == 0) {
            layout.objective_cols.emplace_back(c, name.substr(4));
            continue;
        }
        bool found = false;
        for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
            if (ds.attributes[k].name == name) {
                layout.attr_col[k] = c;
                found = true;
                break;
            }
        }
        if (!found) {
            throw ParseError(source + ": column '" + name + "' has no matching hierarchy");
        }
    }
    for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
        if (layout.attr_col[k] == static_cast<std::size_t>(-1)) {
            throw ParseError(source + ": missing column for attribute '" + ds.attributes[k].name +
                             "'");
        }
    }
    return layout;
}

template <typename RowFn>
void for_each_row(const Dataset& ds, const std::string& text, const std::string& source,
                  CsvLayout& layout, RowFn&& fn) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_row(line);
        if (!have_header) {
            layout = parse_header(ds, cells, source);
            have_header = true;
            continue;
        }
        if (cells.size() != layout.columns) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(layout.columns) + " columns, got " +
                             std::to_string(cells.size()));
        }
        fn(cells, line_no);
    }
    if (!have_header) throw ParseError(source + ": empty document");
}

}  // namespace

void load_objects_csv(Dataset& ds, const std::string& text, const std::string& source) {
    CsvLayout layout;
    std::vector<ObjectRecord> objects;
    for_each_row(ds, text, source, layout, [&](const std::vector<std::string>& cells,
                                               std::size_t line_no) {
        ObjectRecord o;
        o.id = cells[0];
        for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
            const std::string& cell = cells[layout.attr_col[k]];
            if (cell == "-" || cell.empty()) {
                throw ParseError(source + ":" + std::to_string(line_no) +
                                 ": objects must be defined over all attributes");
            }
            std::vector<int> nodes;
            for (const auto& v : split_values(cell)) {
                try {
                    nodes.push_back(ds.attributes[k].hierarchy.node_by_label(v));
                } catch (const ParseError& e) {
                    throw ParseError(source + ":" + std::to_string(line_no) + ": " + e.what());
                }
            }
            o.values.push_back(std::move(nodes));
        }
        for (const auto& [col, name] : layout.objective_cols) {
            try {
                o.objective.push_back(std::stod(cells[col]));
            } catch (const std::exception&) {
                throw ParseError(source + ":" + std::to_string(line_no) +
                                 ": invalid objective value '" + cells[col] + "'");
            }
        }
        objects.push_back(std::move(o));
    });
    ds.objective_names.clear();
    for (const auto& [col, name] : layout.objective_cols) ds.objective_names.push_back(name);
    ds.objects = std::move(objects);
}

void load_users_csv(Dataset& ds, const std::string& text, const std::string& source) {
    CsvLayout layout;
    std::vector<UserPrefs> users;
    for_each_row(ds, text, source, layout,
                 [&](const std::vector<std::string>& cells, std::size_t line_no) {
                     UserPrefs u;
                     u.id = cells[0];
                     for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
                         const std::string& cell = cells[layout.attr_col[k]];
                         if (cell == "-" || cell.empty()) {
                             u.values.emplace_back(std::nullopt);
                             continue;
                         }
                         std::vector<int> nodes;
                         for (const auto& v : split_values(cell)) {
                             try {
                                 nodes.push_back(ds.attributes[k].hierarchy.node_by_label(v));
                             } catch (const ParseError& e) {
                                 throw ParseError(source + ":" + std::to_string(line_no) + ": " +
                                                  e.what());
                             }
                         }
                         u.values.emplace_back(std::move(nodes));
                     }
                     if (u.specified_count() == 0) {
                         throw ParseError(source + ":" + std::to_string(line_no) +
                                          ": user specifies no attribute");
                     }
                     users.push_back(std::move(u));
                 });
    ds.users = std::move(users);
}

namespace {

std::string value_cell(const Dataset& ds, std::size_t attr, const std::vector<int>& nodes) {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += '|';
        out += ds.attributes[attr].hierarchy.nodes[nodes[i]].label;
    }
    return out;
}

std::string fmt_objective(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string serialize_objects_csv(const Dataset& ds) {
    std::ostringstream os;
    os << "# gcp-objects v1\n";
    std::vector<std::string> header{"object_id"};
    for (const auto& a : ds.attributes) header.push_back(a.name);
    for (const auto& n : ds.objective_names) header.push_back("obj:" + n);
    os << join_csv_row(header) << '\n';
    for (const auto& o : ds.objects) {
        std::vector<std::string> row{o.id};
        for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
            row.push_back(value_cell(ds, k, o.values[k]));
        }
        for (double v : o.objective) row.push_back(fmt_objective(v));
        os << join_csv_row(row) << '\n';
    }
    return os.str();
}

std::string serialize_users_csv(const Dataset& ds) {
    std::ostringstream os;
    os << "# gcp-users v1\n";
    std::vector<std::string> header{"user_id"};
    for (const auto& a : ds.attributes) header.push_back(a.name);
    os << join_csv_row(header) << '\n';
    for (const auto& u : ds.users) {
        std::vector<std::string> row{u.id};
        for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
            row.push_back(u.values[k].has_value() ? value_cell(ds, k, *u.values[k]) : "-");
        }
        os << join_csv_row(row) << '\n';
    }
    return os.str();
}

Dataset load_dataset_dir(const std::string& dir, const ParseOptions& opts) {
    namespace fs = std::filesystem;
    std::vector<std::string> hier_paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".hier") hier_paths.push_back(entry.path().string());
    }
    std::sort(hier_paths.begin(), hier_paths.end());
    if (hier_paths.empty()) {
        throw ParseError(dir + ": no .hier files found");
    }
    Dataset ds;
    ds.attributes = load_hierarchies(hier_paths, opts);
    std::string objects_path = (fs::path(dir) / "objects.csv").string();
    std::string users_path = (fs::path(dir) / "users.csv").string();
    load_objects_csv(ds, read_file(objects_path), objects_path);
    load_users_csv(ds, read_file(users_path), users_path);
    ds.validate();
    return ds;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::vector<std::size_t> load_ranked_list(const Dataset& ds, const std::string& text,
                                          const std::string& source) {
    std::vector<std::size_t> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        int idx = ds.object_index(line);
        if (idx < 0) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": unknown object '" + line +
                             "'");
        }
        out.push_back(static_cast<std::size_t>(idx));
    }
    return out;
}

}  // namespace gcp

#include <lapwalk/io.hpp>

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lapwalk::io {

namespace {

using Eigen::Index;

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message) {
    throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                      message);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::string_view strip_comment(std::string_view line) {
    const std::size_t hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<Token> whitespace_tokens(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t begin = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > begin) out.push_back({line.substr(begin, i - begin), begin + 1});
    }
    return out;
}

// Comma-separated fields, trimmed. An all-blank line yields no fields.
std::vector<Token> csv_fields(std::string_view line) {
    std::vector<Token> out;
    bool blank = true;
    for (char c : line) blank = blank && is_space(c);
    if (blank) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = line.find(',', start);
        if (end == std::string_view::npos) end = line.size();
        std::size_t b = start;
        std::size_t e = end;
        while (b < e && is_space(line[b])) ++b;
        while (e > b && is_space(line[e - 1])) --e;
        out.push_back({line.substr(b, e - b), b + 1});
        if (end == line.size()) break;
        start = end + 1;
    }
    return out;
}

double to_double(const Token& t, const std::string& source, std::size_t line) {
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.text.empty() || ec != std::errc{} || ptr != last) {
        fail(source, line, t.column, "expected a number, got '" + std::string(t.text) + "'");
    }
    return value;
}

std::size_t to_index(const Token& t, const std::string& source, std::size_t line) {
    std::size_t value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.text.empty() || ec != std::errc{} || ptr != last) {
        fail(source, line, t.column, "expected a positive integer, got '" + std::string(t.text) + "'");
    }
    return value;
}

bool starts_json(std::string_view text) {
    for (char c : text) {
        if (is_space(c) || c == '\n') continue;
        return c == '[';
    }
    return false;
}

nlohmann::json parse_json(std::string_view text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        fail(source, line, column, "malformed JSON");
    }
}

double json_number(const nlohmann::json& v, const std::string& source, const std::string& where) {
    if (!v.is_number()) throw FormatError(source + ": " + where + " is not a number");
    return v.get<double>();
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return m;
}

Matrix parse_csv_rows(std::string_view text, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::size_t first_line = 0;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto fields = csv_fields(strip_comment(lines[ln]));
        if (fields.empty()) continue;
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(to_double(f, source, ln + 1));
        if (!rows.empty() && row.size() != rows.front().size()) {
            fail(source, ln + 1, 1,
                 "row has " + std::to_string(row.size()) + " entries, expected " +
                     std::to_string(rows.front().size()) + " (as on line " +
                     std::to_string(first_line + 1) + ")");
        }
        if (rows.empty()) first_line = ln;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError(source + ": no data");
    return rows_to_matrix(rows);
}

}  // namespace

WeightedGraph parse_edge_list(std::string_view text, const std::string& source) {
    const auto lines = split_lines(text);
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tokens = whitespace_tokens(strip_comment(lines[ln]));
        if (tokens.empty()) continue;
        const std::size_t line = ln + 1;
        if (!have_header) {
            if (tokens[0].text != "n") fail(source, line, tokens[0].column, "expected header 'n <count>'");
            if (tokens.size() != 2) fail(source, line, tokens[0].column, "header must be 'n <count>'");
            n = to_index(tokens[1], source, line);
            if (n < 2) fail(source, line, tokens[1].column, "vertex count must be at least 2");
            have_header = true;
            continue;
        }
        if (tokens.size() < 2 || tokens.size() > 3) {
            fail(source, line, tokens[0].column, "expected 'u v w'");
        }
        const std::size_t u = to_index(tokens[0], source, line);
        const std::size_t v = to_index(tokens[1], source, line);
        for (const auto& [value, tok] : {std::pair{u, tokens[0]}, std::pair{v, tokens[1]}}) {
            if (value < 1 || value > n) {
                fail(source, line, tok.column,
                     "vertex " + std::to_string(value) + " outside [1, " + std::to_string(n) + "]");
            }
        }
        const double w = tokens.size() == 3 ? to_double(tokens[2], source, line) : 1.0;
        edges.push_back({u - 1, v - 1, w});
    }
    if (!have_header) throw FormatError(source + ": missing header 'n <count>'");
    return WeightedGraph(n, std::move(edges));
}

Matrix parse_csv_matrix(std::string_view text, const std::string& source) {
    Matrix m = parse_csv_rows(text, source);
    if (m.rows() != m.cols()) {
        throw FormatError(source + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
    }
    return m;
}

Vector parse_vector(std::string_view text, const std::string& source) {
    if (starts_json(text)) {
        const auto doc = parse_json(text, source);
        if (!doc.is_array()) throw FormatError(source + ": expected a JSON array");
        Vector out(static_cast<Index>(doc.size()));
        for (std::size_t i = 0; i < doc.size(); ++i) {
            out(static_cast<Index>(i)) = json_number(doc[i], source, "entry " + std::to_string(i + 1));
        }
        if (out.size() == 0) throw FormatError(source + ": empty vector");
        return out;
    }
    std::vector<double> values;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        for (const auto& f : csv_fields(strip_comment(lines[ln]))) {
            values.push_back(to_double(f, source, ln + 1));
        }
    }
    if (values.empty()) throw FormatError(source + ": no data");
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Matrix parse_forces(std::string_view text, const std::string& source) {
    if (!starts_json(text)) return parse_csv_rows(text, source);
    const auto doc = parse_json(text, source);
    if (!doc.is_array() || doc.empty()) throw FormatError(source + ": expected a non-empty JSON array");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < doc.size(); ++r) {
        const auto& row = doc[r];
        std::vector<double> values;
        if (row.is_array()) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                values.push_back(json_number(row[c], source,
                                             "entry (" + std::to_string(r + 1) + "," +
                                                 std::to_string(c + 1) + ")"));
            }
        } else {
            values.push_back(json_number(row, source, "entry " + std::to_string(r + 1)));
        }
        if (values.empty() || (!rows.empty() && values.size() != rows.front().size())) {
            throw FormatError(source + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(values.size()) + " entries, expected " +
                              std::to_string(rows.empty() ? 1 : rows.front().size()));
        }
        rows.push_back(std::move(values));
    }
    return rows_to_matrix(rows);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
    return parse_edge_list(read_file(path), path.string());
}

Matrix read_csv_matrix(const std::filesystem::path& path) {
    return parse_csv_matrix(read_file(path), path.string());
}

Vector read_vector(const std::filesystem::path& path) {
    return parse_vector(read_file(path), path.string());
}

Matrix read_forces(const std::filesystem::path& path) {
    return parse_forces(read_file(path), path.string());
}

std::string format_csv(const Matrix& m) {
    std::string out;
    char buf[32];
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string format_edge_list(const WeightedGraph& g) {
    std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
    char buf[32];
    for (const auto& e : g.edges()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.w);
        out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + buf + "\n";
    }
    return out;
}

}  // namespace lapwalk::io

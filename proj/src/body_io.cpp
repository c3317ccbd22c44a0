#include "tflats/body_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace tflats {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : InvalidArgument(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_factor(std::string_view f) {
    if (f == "pi") return M_PI;
    double v = 0.0;
    const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(v))
        throw InvalidArgument("not a number: '" + std::string(f) + "'");
    return v;
}

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> split_values(std::string_view value, int first_column) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < value.size()) {
        while (i < value.size() && (std::isspace(static_cast<unsigned char>(value[i])) || value[i] == ',')) ++i;
        const std::size_t start = i;
        while (i < value.size() && !std::isspace(static_cast<unsigned char>(value[i])) && value[i] != ',') ++i;
        if (i > start) out.push_back({value.substr(start, i - start), first_column + static_cast<int>(start)});
    }
    return out;
}

struct Entry {
    std::vector<Token> values;
    std::string_view raw;
    int line = 0;
    int column = 0;  // column of the value
    int key_column = 0;
};

}  // namespace

double parse_number(std::string_view token) {
    token = trim(token);
    if (token.empty()) throw InvalidArgument("empty number");
    double sign = 1.0;
    if (token.front() == '-' || token.front() == '+') {
        if (token.front() == '-') sign = -1.0;
        token.remove_prefix(1);
    }
    double value = 1.0;
    char op = '*';
    std::size_t start = 0;
    for (std::size_t i = 0; i <= token.size(); ++i) {
        const bool end = i == token.size();
        const bool exponent_sign = !end && (token[i] == '-' || token[i] == '+') && i > 0 &&
                                   (token[i - 1] == 'e' || token[i - 1] == 'E');
        if (end || ((token[i] == '*' || token[i] == '/') && !exponent_sign)) {
            const double f = parse_factor(token.substr(start, i - start));
            if (op == '*') value *= f;
            else {
                if (f == 0.0) throw InvalidArgument("division by zero in number");
                value /= f;
            }
            if (!end) op = token[i];
            start = i + 1;
        }
    }
    return sign * value;
}

ConvexBody parse_body(std::string_view text, const std::string& source) {
    std::multimap<std::string, Entry> entries;
    std::map<std::string, int> first_line;
    static const std::map<std::string, bool> known = {
        {"kind", false}, {"n", false},   {"radius", false},   {"center", false}, {"semiaxes", false},
        {"chart", false}, {"row", true}, {"term", true},      {"interior", false}, {"convex", false}};
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        const int indent = static_cast<int>(line.find_first_not_of(" \t"));
        if (eq == std::string_view::npos) throw ParseError(source, line_no, indent + 1, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        auto it = known.find(key);
        if (it == known.end()) throw ParseError(source, line_no, indent + 1, "unknown key '" + key + "'");
        if (!it->second && first_line.count(key))
            throw ParseError(source, line_no, indent + 1,
                             "duplicate key '" + key + "' (first given on line " + std::to_string(first_line[key]) + ")");
        first_line.emplace(key, line_no);
        Entry e;
        e.line = line_no;
        e.key_column = indent + 1;
        e.raw = trim(line.substr(eq + 1));
        e.column = static_cast<int>(eq) + 2;
        e.values = split_values(line.substr(eq + 1), e.column);
        if (e.values.empty()) throw ParseError(source, line_no, e.column, "missing value for '" + key + "'");
        e.column = e.values.front().column;
        entries.emplace(key, std::move(e));
    }

    auto get = [&](const std::string& key) -> const Entry* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto require = [&](const std::string& key) -> const Entry& {
        const Entry* e = get(key);
        if (!e) throw ParseError(source, line_no, 1, "missing required key '" + key + "'");
        return *e;
    };
    auto number = [&](const Token& t, int line) {
        try {
            return parse_number(t.text);
        } catch (const InvalidArgument& ex) {
            throw ParseError(source, line, t.column, ex.what());
        }
    };
    auto scalar = [&](const Entry& e) {
        if (e.values.size() != 1) throw ParseError(source, e.line, e.values[1].column, "expected a single value");
        return number(e.values[0], e.line);
    };
    auto integer = [&](const Entry& e) {
        const double v = scalar(e);
        if (v != std::floor(v) || std::abs(v) > 1e6) throw ParseError(source, e.line, e.column, "expected an integer");
        return static_cast<int>(v);
    };
    auto vector = [&](const Entry& e, std::size_t size) {
        if (e.values.size() != size)
            throw ParseError(source, e.line, e.column,
                             "expected " + std::to_string(size) + " values, got " + std::to_string(e.values.size()));
        Vec v(static_cast<Eigen::Index>(size));
        for (std::size_t i = 0; i < size; ++i) v[static_cast<Eigen::Index>(i)] = number(e.values[i], e.line);
        return v;
    };
    // Constructor errors are reported at the line of the kind key.
    auto build = [&](const Entry& at, auto&& make) -> ConvexBody {
        try {
            return make();
        } catch (const ParseError&) {
            throw;
        } catch (const DegenerateInput& ex) {
            throw DegenerateInput(source + ":" + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " +
                                  ex.what());
        } catch (const Error& ex) {
            throw ParseError(source, at.line, at.column, ex.what());
        }
    };

    const Entry& kind_entry = require("kind");
    const std::string kind(kind_entry.raw);
    const Entry& n_entry = require("n");
    const int n = integer(n_entry);
    if (n < 1 || n > 12) throw ParseError(source, n_entry.line, n_entry.column, "n must lie in [1, 12]");
    const int chart = get("chart") ? integer(*get("chart")) : 0;
    auto only = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, e] : entries) {
            bool ok = key == "kind" || key == "n";
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) throw ParseError(source, e.line, e.key_column, "key '" + key + "' does not apply to kind " + kind);
        }
    };

    if (kind == "metric_sphere") {
        only({"radius", "center"});
        const double r = scalar(require("radius"));
        const Entry* c = get("center");
        return build(kind_entry, [&] {
            return c ? ConvexBody::metric_sphere(n, r, vector(*c, n + 1)) : ConvexBody::metric_sphere(n, r);
        });
    }
    if (kind == "affine_sphere") {
        only({"radius", "center", "chart"});
        const double r = scalar(require("radius"));
        const Vec c = get("center") ? vector(*get("center"), n) : Vec::Zero(n);
        return build(kind_entry, [&] { return ConvexBody::affine_sphere(n, c, r, chart); });
    }
    if (kind == "ellipsoid") {
        only({"semiaxes", "center", "chart"});
        const Vec a = vector(require("semiaxes"), n);
        const Vec c = get("center") ? vector(*get("center"), n) : Vec::Zero(n);
        return build(kind_entry, [&] { return ConvexBody::ellipsoid(n, a, c, chart); });
    }
    if (kind == "quadric") {
        only({"row"});
        const auto range = entries.equal_range("row");
        Mat a(n + 1, n + 1);
        int r = 0;
        for (auto it = range.first; it != range.second; ++it, ++r) {
            if (r > n) throw ParseError(source, it->second.line, it->second.key_column, "too many matrix rows");
            a.row(r) = vector(it->second, n + 1).transpose();
        }
        if (r != n + 1)
            throw ParseError(source, line_no, 1, "quadric needs " + std::to_string(n + 1) + " rows, got " + std::to_string(r));
        if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
            throw ParseError(source, range.first->second.line, 1, "quadric matrix is not symmetric");
        return build(kind_entry, [&] { return ConvexBody::quadric(a); });
    }
    if (kind == "implicit") {
        only({"term", "interior", "convex"});
        std::vector<HomogeneousPolynomial::Term> terms;
        const auto range = entries.equal_range("term");
        for (auto it = range.first; it != range.second; ++it) {
            const Entry& e = it->second;
            if (e.values.size() != static_cast<std::size_t>(n + 2))
                throw ParseError(source, e.line, e.column, "term needs a coefficient and " + std::to_string(n + 1) + " exponents");
            HomogeneousPolynomial::Term t;
            t.coef = number(e.values[0], e.line);
            for (int i = 1; i < n + 2; ++i) {
                const double x = number(e.values[i], e.line);
                if (x < 0 || x != std::floor(x))
                    throw ParseError(source, e.line, e.values[i].column, "exponent must be a nonnegative integer");
                t.exponents.push_back(static_cast<int>(x));
            }
            terms.push_back(std::move(t));
        }
        if (terms.empty()) throw ParseError(source, line_no, 1, "implicit body needs at least one term");
        const Vec interior = vector(require("interior"), n + 1);
        bool convex = false;
        if (const Entry* c = get("convex")) {
            if (c->raw == "true") convex = true;
            else if (c->raw != "false") throw ParseError(source, c->line, c->column, "convex must be true or false");
        }
        const Entry& first_term = range.first->second;
        auto poly = [&] {
            try {
                return HomogeneousPolynomial(n + 1, terms);
            } catch (const Error& ex) {
                throw ParseError(source, first_term.line, first_term.column, ex.what());
            }
        }();
        return build(kind_entry, [&] { return ConvexBody::implicit(n, poly, interior, convex); });
    }
    throw ParseError(source, kind_entry.line, kind_entry.column, "unknown body kind '" + kind + "'");
}

ConvexBody load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open body file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_body(ss.str(), path);
}

}  // namespace tflats

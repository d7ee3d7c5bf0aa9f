#include "acalc/io.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace acalc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Algebra files
// ---------------------------------------------------------------------------

Algebra parse_algebra_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw AlgebraError(std::string("bad algebra file: ") + e.what());
    }
    if (!doc.contains("dim") || !doc.contains("unity") || !doc.contains("constants"))
        throw AlgebraError("algebra file needs dim, unity and constants");

    const int n = doc["dim"].get<int>();
    if (n < 1) throw DimensionMismatch("dim must be >= 1");
    const auto& u = doc["unity"];
    if (!u.is_array() || static_cast<int>(u.size()) != n)
        throw DimensionMismatch("unity must be an array of length dim");
    Eigen::VectorXd unity(n);
    for (int i = 0; i < n; ++i) unity[i] = u[static_cast<std::size_t>(i)].get<double>();

    const auto& c = doc["constants"];
    if (!c.is_array() || static_cast<int>(c.size()) != n)
        throw DimensionMismatch("constants must be an N x N x N array");
    std::vector<double> tensor(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        const auto& ci = c[static_cast<std::size_t>(i)];
        if (!ci.is_array() || static_cast<int>(ci.size()) != n)
            throw DimensionMismatch("constants must be an N x N x N array");
        for (int j = 0; j < n; ++j) {
            const auto& cij = ci[static_cast<std::size_t>(j)];
            if (!cij.is_array() || static_cast<int>(cij.size()) != n)
                throw DimensionMismatch("constants must be an N x N x N array");
            for (int k = 0; k < n; ++k)
                tensor[(static_cast<std::size_t>(i) * n + j) * n + k] =
                    cij[static_cast<std::size_t>(k)].get<double>();
        }
    }

    std::vector<std::string> labels;
    if (doc.contains("labels"))
        for (const auto& l : doc["labels"]) labels.push_back(l.get<std::string>());
    return build_algebra(tensor, unity, std::move(labels));
}

Algebra load_algebra_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AlgebraError("cannot open algebra file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_json(buf.str());
}

std::string algebra_to_json(const AlgebraSpec& a) {
    const int n = a.dim();
    json doc;
    doc["dim"] = n;
    doc["unity"] = std::vector<double>(a.unity_coords().data(),
                                       a.unity_coords().data() + n);
    json constants = json::array();
    for (int i = 0; i < n; ++i) {
        json plane = json::array();
        for (int j = 0; j < n; ++j) {
            json row = json::array();
            for (int k = 0; k < n; ++k) row.push_back(a.constant(i, j, k));
            plane.push_back(std::move(row));
        }
        constants.push_back(std::move(plane));
    }
    doc["constants"] = std::move(constants);
    if (!a.basis_labels().empty()) doc["labels"] = a.basis_labels();
    return doc.dump(2);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

char verdict_char(SumStatus s) {
    switch (s) {
        case SumStatus::Converged: return 'C';
        case SumStatus::Diverged: return 'D';
        case SumStatus::Inconclusive: return 'I';
    }
    return '?';
}

// shortest representation that round-trips
void print_double(std::ostream& os, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
}

}  // namespace

void write_region_csv(std::ostream& os, const RegionScan& scan) {
    const int dim = scan.slice.origin.dim();
    os << "u,v,verdict";
    for (int k = 0; k < dim; ++k) os << ",comp_" << k;
    os << "\n";
    for (int iu = 0; iu < scan.grid.nu; ++iu)
        for (int iv = 0; iv < scan.grid.nv; ++iv) {
            print_double(os, scan.u_values[static_cast<std::size_t>(iu)]);
            os << ',';
            print_double(os, scan.v_values[static_cast<std::size_t>(iv)]);
            os << ',' << verdict_char(scan.verdict_at(iu, iv));
            const auto& val = scan.value_at(iu, iv);
            for (int k = 0; k < dim; ++k) {
                os << ',';
                if (val) print_double(os, val->coord(k));
            }
            os << "\n";
        }
}

void write_table_csv(std::ostream& os, const std::vector<double>& grid,
                     const Eigen::MatrixXd& samples) {
    os << "t";
    for (Eigen::Index i = 0; i < samples.cols(); ++i) os << ",f_" << (i + 1);
    os << "\n";
    for (std::size_t r = 0; r < grid.size(); ++r) {
        print_double(os, grid[r]);
        for (Eigen::Index i = 0; i < samples.cols(); ++i) {
            os << ',';
            print_double(os, samples(static_cast<Eigen::Index>(r), i));
        }
        os << "\n";
    }
}

// ---------------------------------------------------------------------------
// Coefficient expressions
// ---------------------------------------------------------------------------

namespace {

// Grammar:
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | postfix ('^' factor)?   right-associative
//   postfix := atom ('!')*
//   atom    := number | 'n' | '(' expr ')'
class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    // Compiles to a closure; parse errors carry the offending position.
    std::function<double(std::int64_t)> parse() {
        auto fn = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return fn;
    }

private:
    using Fn = std::function<double(double)>;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("coefficient expression: " + what + " at position " +
                             std::to_string(pos_),
                         pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::function<double(std::int64_t)> lift(Fn f) {
        return [f](std::int64_t n) { return f(static_cast<double>(n)); };
    }

    Fn parse_expr_fn() {
        Fn lhs = parse_term_fn();
        for (;;) {
            if (eat('+')) {
                Fn rhs = parse_term_fn();
                Fn prev = lhs;
                lhs = [prev, rhs](double n) { return prev(n) + rhs(n); };
            } else if (eat('-')) {
                Fn rhs = parse_term_fn();
                Fn prev = lhs;
                lhs = [prev, rhs](double n) { return prev(n) - rhs(n); };
            } else {
                return lhs;
            }
        }
    }

    std::function<double(std::int64_t)> parse_expr() { return lift(parse_expr_fn()); }

    Fn parse_term_fn() {
        Fn lhs = parse_factor_fn();
        for (;;) {
            if (eat('*')) {
                Fn rhs = parse_factor_fn();
                Fn prev = lhs;
                lhs = [prev, rhs](double n) { return prev(n) * rhs(n); };
            } else if (eat('/')) {
                Fn rhs = parse_factor_fn();
                Fn prev = lhs;
                lhs = [prev, rhs](double n) { return prev(n) / rhs(n); };
            } else {
                return lhs;
            }
        }
    }

    // '^' binds tighter than unary minus, so -n^2 means -(n^2).
    Fn parse_factor_fn() {
        if (eat('-')) {
            Fn inner = parse_factor_fn();
            return [inner](double n) { return -inner(n); };
        }
        Fn base = parse_postfix_fn();
        if (eat('^')) {
            Fn expo = parse_factor_fn();
            return [base, expo](double n) { return std::pow(base(n), expo(n)); };
        }
        return base;
    }

    static double factorial_of(double v) {
        const double r = std::round(v);
        if (!(std::abs(v - r) < 1e-9) || r < 0.0) return std::nan("");
        double f = 1.0;
        for (double k = 2.0; k <= r; k += 1.0) f *= k;
        return f;
    }

    Fn parse_postfix_fn() {
        Fn base = parse_atom_fn();
        while (eat('!')) {
            Fn prev = base;
            base = [prev](double n) { return factorial_of(prev(n)); };
        }
        return base;
    }

    Fn parse_atom_fn() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Fn inner = parse_expr_fn();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'n' || c == 'N') {
            ++pos_;
            return [](double n) { return n; };
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(text_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            return [v](double) { return v; };
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

double eval_coeff_expr(const std::string& expr, std::int64_t n) {
    return ExprParser(expr).parse()(n);
}

PowerSeries parse_coefficients(const std::string& spec, const Algebra& algebra) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("coefficient spec needs a 'kind:' prefix", 0);
    const std::string kind = trimmed(spec.substr(0, colon));
    const std::string body = trimmed(spec.substr(colon + 1));

    if (kind == "real") {
        auto raw = ExprParser(body).parse();
        auto rule = [raw](std::int64_t n) {
            const double v = raw(n);
            if (!std::isfinite(v)) {
                if (n == 0) return 0.0;  // series starting at n = 1
                throw NonFiniteTerm("coefficient expression not finite at n=" +
                                    std::to_string(n));
            }
            return v;
        };
        return PowerSeries::with_real_coeffs(algebra, rule);
    }

    if (kind == "element") {
        std::string list = body;
        if (!list.empty() && list.front() == '[') {
            if (list.back() != ']')
                throw ParseError("element list: expected closing ']'", spec.size() - 1);
            list = list.substr(1, list.size() - 2);
        }
        std::vector<Element> coeffs;
        std::stringstream groups(list);
        std::string group;
        while (std::getline(groups, group, ';')) {
            group = trimmed(group);
            if (group.empty()) continue;
            std::vector<double> coords;
            std::stringstream parts(group);
            std::string part;
            while (std::getline(parts, part, ','))
                coords.push_back(ExprParser(part).parse()(0));
            if (static_cast<int>(coords.size()) != algebra->dim())
                throw ParseError("element list: wrong coordinate count in '" + group + "'",
                                 colon);
            Eigen::VectorXd v(algebra->dim());
            for (int i = 0; i < algebra->dim(); ++i) v[i] = coords[static_cast<std::size_t>(i)];
            coeffs.push_back(algebra->element(std::move(v)));
        }
        return PowerSeries::from_list(algebra, std::move(coeffs));
    }

    if (kind == "builtin") {
        auto inv_factorial_rule = [] {
            return [](std::int64_t n) {
                double f = 1.0;
                for (std::int64_t k = 2; k <= n; ++k) f /= static_cast<double>(k);
                return f;
            };
        };
        if (body == "exp")
            return PowerSeries::with_real_coeffs(algebra, inv_factorial_rule());
        if (body == "cosh") {
            auto if_rule = inv_factorial_rule();
            return PowerSeries::with_real_coeffs(algebra, [if_rule](std::int64_t n) {
                return n % 2 == 0 ? if_rule(n) : 0.0;
            });
        }
        if (body == "sinh") {
            auto if_rule = inv_factorial_rule();
            return PowerSeries::with_real_coeffs(algebra, [if_rule](std::int64_t n) {
                return n % 2 == 1 ? if_rule(n) : 0.0;
            });
        }
        if (body == "cos") {
            auto if_rule = inv_factorial_rule();
            return PowerSeries::with_real_coeffs(algebra, [if_rule](std::int64_t n) {
                if (n % 2 != 0) return 0.0;
                return (n / 2) % 2 == 0 ? if_rule(n) : -if_rule(n);
            });
        }
        if (body == "sin") {
            auto if_rule = inv_factorial_rule();
            return PowerSeries::with_real_coeffs(algebra, [if_rule](std::int64_t n) {
                if (n % 2 != 1) return 0.0;
                return ((n - 1) / 2) % 2 == 0 ? if_rule(n) : -if_rule(n);
            });
        }
        if (body == "geometric") return PowerSeries::geometric_series(algebra);
        if (body == "band") {
            // constant coefficient 1 + v_2 + ... + v_N; over the hyperbolic
            // numbers this is 1 + j, and on the power-basis presets it
            // annihilates 1 - j since (1 + ... + j^{N-1})(1 - j) = 1 - j^N
            if (algebra->dim() < 2)
                throw ParseError("builtin band needs an algebra of dim >= 2", colon);
            Element c = algebra->unity();
            for (int i = 1; i < algebra->dim(); ++i) c = c + algebra->basis_vector(i);
            return PowerSeries::with_coeffs(algebra,
                                            [c](std::int64_t) { return c; });
        }
        throw ParseError("unknown builtin '" + body + "'", colon);
    }

    throw ParseError("unknown coefficient kind '" + kind + "'", 0);
}

}  // namespace acalc

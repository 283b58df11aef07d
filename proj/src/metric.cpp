#include "metric.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "expr.hpp"

namespace kipp {

namespace {

RationalFunction parse_over(const std::string& text, const std::vector<std::string>& vars) {
    return to_rational_function(parse_expression(text, vars));
}

}  // namespace

void MetricSpec::validate() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (g[i][j] != g[j][i])
                throw ConfigError("metric is not symmetric at component (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            const RationalFunction& c = g[i][j];
            for (size_t v = 0; v < c.vars().size(); ++v) {
                if (c.vars()[v] != coords[0] && c.vars()[v] != coords[1] &&
                    (c.num().depends_on(v) || c.den().depends_on(v)))
                    throw ConfigError("metric component g(" + std::to_string(i) + "," +
                                      std::to_string(j) + ") depends on cyclic coordinate '" +
                                      c.vars()[v] + "'");
            }
        }
    }
}

void MetricSpec::check_point(const Rational& x0, const Rational& y0) const {
    for (const Polynomial& p : forbidden) {
        std::vector<Rational> pt;
        for (const auto& v : p.vars()) {
            if (v == coords[0])
                pt.push_back(x0);
            else if (v == coords[1])
                pt.push_back(y0);
            else
                pt.push_back(Rational(0));
        }
        if (p.evaluate(pt).is_zero())
            throw SingularPointError("evaluation point lies on the singular locus: " + p.str() +
                                     " = 0");
    }
}

std::string MetricSpec::canonical_text() const {
    std::ostringstream os;
    os << "coords: " << coords[0] << " " << coords[1] << " " << coords[2] << " " << coords[3]
       << "\n";
    os << "cyclic: " << coords[2] << " " << coords[3] << "\n";
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (!g[i][j].is_zero()) os << "g " << i << " " << j << " = " << g[i][j].str() << "\n";
    for (const Polynomial& p : forbidden) os << "forbid = " << p.str() << "\n";
    return os.str();
}

MetricSpec zipoy_voorhees(const ZipoyVoorheesParams& params) {
    if (params.delta < 0)
        throw ConfigError("zipoy-voorhees delta must be a non-negative integer (got " +
                          std::to_string(params.delta) + "); the (x,delta) -> (-x,-delta) "
                          "symmetry makes negative values redundant");
    const std::vector<std::string> vars = {"x", "y"};
    Polynomial x = Polynomial::variable("x", vars);
    Polynomial y = Polynomial::variable("y", vars);
    Polynomial one = Polynomial::constant(Rational(1), vars);

    RationalFunction xp1{x + one};
    RationalFunction xm1{x - one};
    RationalFunction x2m1{x * x - one};
    RationalFunction one_m_y2{one - y * y};
    RationalFunction x2my2{x * x - y * y};

    long d = params.delta;
    // F = ((x+1)/(x-1))^delta,  G = (x^2-y^2) ((x^2-1)/(x^2-y^2))^(delta^2)
    RationalFunction F = RationalFunction::pow(xp1 / xm1, d);
    RationalFunction G = x2my2 * RationalFunction::pow(x2m1 / x2my2, d * d);

    MetricSpec m;
    m.name = "zipoy-voorhees delta=" + std::to_string(d);
    m.coords = {"x", "y", "phi", "t"};
    for (auto& row : m.g)
        for (auto& c : row) c = RationalFunction(Rational(0), vars);
    m.g[0][0] = F * G / x2m1;
    m.g[1][1] = F * G / one_m_y2;
    m.g[2][2] = F * x2m1 * one_m_y2;
    m.g[3][3] = -RationalFunction::pow(xm1 / xp1, d);
    m.forbidden = {x - one, x + one, y - one, y + one, x - y, x + y};
    return m;
}

namespace {

// Determinant of a k x k rational-function matrix by cofactor expansion;
// the dimension is at most 4.
RationalFunction det(const std::vector<std::vector<RationalFunction>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    RationalFunction sum;
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<RationalFunction>> minor(n - 1);
        for (size_t r = 1; r < n; ++r)
            for (size_t c = 0; c < n; ++c)
                if (c != j) minor[r - 1].push_back(a[r][c]);
        RationalFunction term = a[0][j] * det(minor);
        sum = (j % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
}

}  // namespace

InverseMetric invert(const MetricSpec& m) {
    std::vector<std::vector<RationalFunction>> a(4, std::vector<RationalFunction>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = m.g[i][j];
    RationalFunction d = det(a);
    if (d.is_zero()) throw Error("metric determinant is identically zero");

    InverseMetric inv;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            std::vector<std::vector<RationalFunction>> minor(3, std::vector<RationalFunction>());
            for (int r = 0; r < 4; ++r) {
                if (r == i) continue;
                auto& row = minor[r < i ? r : r - 1];
                for (int c = 0; c < 4; ++c)
                    if (c != j) row.push_back(a[r][c]);
            }
            RationalFunction cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            // adj(A)^T / det; symmetric input keeps the transpose free
            inv.g_upper[i][j] = cof / d;
            inv.g_upper[j][i] = inv.g_upper[i][j];
        }
    }
    return inv;
}

Hamiltonian hamiltonian(const MetricSpec& m, const InverseMetric& inv) {
    Hamiltonian h;
    h.coords = m.coords;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            if (inv.g_upper[i][j].is_zero()) continue;
            MomExp e{0, 0, 0, 0};
            e[i] += 1;
            e[j] += 1;
            // diagonal with 1/2, off-diagonal counted once with factor 1
            RationalFunction c =
                (i == j) ? inv.g_upper[i][j].scaled(Rational(1, 2)) : inv.g_upper[i][j];
            h.poly.add_term(e, c);
        }
    }
    return h;
}

MetricSpec parse_metric_file(const std::string& content, const std::string& name) {
    MetricSpec m;
    m.name = name;
    bool have_coords = false, have_cyclic = false;
    std::array<std::string, 2> cyclic;
    std::vector<std::pair<std::pair<int, int>, std::string>> entries;
    std::vector<std::string> forbids;

    std::istringstream is(content);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError("metric file " + name + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (head == "coords:") {
            for (auto& c : m.coords)
                if (!(ls >> c)) fail("expected 4 coordinate names");
            have_coords = true;
        } else if (head == "cyclic:") {
            if (!(ls >> cyclic[0] >> cyclic[1])) fail("expected 2 cyclic coordinate names");
            have_cyclic = true;
        } else if (head == "g") {
            int i, j;
            std::string eq;
            if (!(ls >> i >> j >> eq) || eq != "=") fail("expected 'g <i> <j> = <expression>'");
            if (i < 0 || i > 3 || j < 0 || j > 3) fail("component indices must be 0..3");
            std::string expr;
            std::getline(ls, expr);
            entries.push_back({{i, j}, expr});
        } else if (head == "forbid") {
            std::string eq;
            if (!(ls >> eq) || eq != "=") fail("expected 'forbid = <expression>'");
            std::string expr;
            std::getline(ls, expr);
            forbids.push_back(expr);
        } else {
            fail("unrecognized line '" + head + "'");
        }
    }
    if (!have_coords) throw ConfigError("metric file " + name + ": missing 'coords:' line");
    if (!have_cyclic) throw ConfigError("metric file " + name + ": missing 'cyclic:' line");
    if (cyclic[0] != m.coords[2] || cyclic[1] != m.coords[3])
        throw ConfigError("metric file " + name +
                          ": cyclic coordinates must be the last two of 'coords:'");
    if (entries.empty()) throw ConfigError("metric file " + name + ": no metric components");

    std::vector<std::string> all(m.coords.begin(), m.coords.end());
    std::vector<std::string> base = {m.coords[0], m.coords[1]};
    for (auto& row : m.g)
        for (auto& c : row) c = RationalFunction(Rational(0), base);
    // Parse over every coordinate for decent diagnostics, then narrow to the
    // base pair once dependence is validated.
    for (const auto& [ij, text] : entries) {
        RationalFunction f = parse_over(text, all);
        m.g[ij.first][ij.second] = f;
        m.g[ij.second][ij.first] = f;
    }
    for (const auto& text : forbids) {
        RationalFunction f = parse_over(text, all);
        if (!f.is_polynomial())
            throw ConfigError("metric file " + name + ": forbid expressions must be polynomial");
        m.forbidden.push_back(f.num());
    }
    m.validate();
    for (auto& row : m.g)
        for (auto& c : row)
            c = RationalFunction(c.num().compacted().with_vars(base),
                                 c.den().compacted().with_vars(base));
    for (auto& p : m.forbidden) p = p.compacted().with_vars(base);
    return m;
}

MetricSpec load_metric_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open metric file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_metric_file(ss.str(), path);
}

}  // namespace kipp

#include "catalog.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace ca {

using json = nlohmann::json;

namespace {

CharPoly cst(const Scalar& c, int d) { return CharPoly(c, d); }

Weight unit(int d, int i, int v = 1)
{
    Weight w(d, 0);
    w[i] = v;
    return w;
}

void init(CourantSpec& s, const std::string& name, int d, int g)
{
    s.name = name;
    s.d = d;
    s.g = g;
    s.metric.assign(g, std::vector<Scalar>(g));
}

// structure constants f^k_ij, filled antisymmetrically
void set_bracket(CourantSpec& s, int a, int b, int c, const CharPoly& v)
{
    s.bracket[a][b][c] = v;
    s.bracket[b][a][c] = -v;
}

CourantSpec hyperbolic2()
{
    CourantSpec s;
    init(s, "hyperbolic2", 0, 2);
    s.metric[0][1] = s.metric[1][0] = 1;
    s.resize();
    return s;
}

CourantSpec so3(const CharPoly& f, const std::string& name, int d)
{
    CourantSpec s;
    init(s, name, d, 3);
    for (int a = 0; a < 3; ++a) s.metric[a][a] = 1;
    if (d == 1) s.chiB = {{Scalar(1)}};
    s.resize();
    set_bracket(s, 0, 1, 2, f);
    set_bracket(s, 1, 2, 0, f);
    set_bracket(s, 2, 0, 1, f);
    return s;
}

CourantSpec lie_double_sl2()
{
    CourantSpec s;
    init(s, "lie-double-sl2", 0, 6);
    for (int i = 0; i < 3; ++i) s.metric[i][3 + i] = s.metric[3 + i][i] = Scalar::frac(1, 2);
    s.resize();
    // h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    int f[3][3][3] = {};
    auto put = [&](int i, int j, int k, int v) { f[i][j][k] = v; f[j][i][k] = -v; };
    put(0, 1, 1, 2);
    put(0, 2, 2, -2);
    put(1, 2, 0, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (f[i][j][k]) s.bracket[i][j][k] = cst(f[i][j][k], 0);
                // [z_i, zeta^k] = -sum_j f^k_ij zeta^j
                if (f[i][j][k]) {
                    s.bracket[i][3 + k][3 + j] += cst(-f[i][j][k], 0);
                    s.bracket[3 + k][i][3 + j] += cst(f[i][j][k], 0);
                }
            }
    return s;
}

CourantSpec kronecker(const Scalar& slope, bool symbolic)
{
    CourantSpec s;
    init(s, symbolic ? "t2-kronecker" : "t2-kronecker(" + slope.str() + ")", 2, 0);
    if (symbolic) s.symbol = "nu";
    s.chiF = {{Scalar(1), slope}};
    s.chiB = {{Scalar(0), Scalar(1)}};
    s.resize();
    s.approximate_window = !symbolic;
    return s;
}

CourantSpec t3_exact(const Scalar& c)
{
    CourantSpec s;
    init(s, "t3-exact(" + c.str() + ")", 3, 0);
    for (int i = 0; i < 3; ++i) s.chiF.push_back({0, 0, 0}), s.chiF[i][i] = 1;
    s.resize();
    int perm[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
    for (auto& p : perm) s.H[p[0]][p[1]][p[2]] = cst(c * Scalar(p[3]), 3);
    return s;
}

void alt_H(CourantSpec& s, const CharPoly& h)
{
    int perm[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
    for (auto& p : perm) s.H[p[0]][p[1]][p[2]] = p[3] > 0 ? h : -h;
}

CourantSpec t4(const std::string& name, int nF)
{
    CourantSpec s;
    init(s, name, 4, 0);
    for (int i = 0; i < 4; ++i) {
        std::vector<Scalar> v(4);
        v[i] = 1;
        (i < nF ? s.chiF : s.chiB).push_back(v);
    }
    return s;
}

CourantSpec t4_twisted(int n)
{
    CourantSpec s = t4("t4-twisted(" + std::to_string(n) + ")", 3);
    s.resize();
    alt_H(s, CharPoly::mono(unit(4, 3, n)));
    std::vector<int> v{0, 0, 0, n};
    for (auto f : {Family::Ffiber, Family::PmomF, Family::PmomB, Family::Bdual2}) s.grading.fam[f] = v;
    return s;
}

CourantSpec t4_broken()
{
    CourantSpec s = t4("t4-broken", 4);
    s.resize();
    alt_H(s, CharPoly::mono(unit(4, 3, 1)));
    std::vector<int> v{0, 0, 0, 1};
    for (auto f : {Family::Ffiber, Family::PmomF}) s.grading.fam[f] = v;
    return s;
}

CourantSpec so3_circle(int n)
{
    CourantSpec s = so3(CharPoly::mono({n}), "so3-circle(" + std::to_string(n) + ")", 1);
    s.grading.A = {{1}};
    s.grading.fam[Family::Gfiber] = {-n};
    s.grading.fam[Family::PmomB] = {-2 * n};
    s.grading.fam[Family::Bdual2] = {-2 * n};
    return s;
}

std::pair<std::string, std::string> split_name(const std::string& name)
{
    auto p = name.find('(');
    if (p != std::string::npos) {
        if (name.back() != ')') throw SpecError("malformed catalog name: " + name);
        return {name.substr(0, p), name.substr(p + 1, name.size() - p - 2)};
    }
    p = name.find(':');
    if (p != std::string::npos) return {name.substr(0, p), name.substr(p + 1)};
    return {name, ""};
}

int int_arg(const std::string& a, int def)
{
    if (a.empty()) return def;
    try {
        size_t pos;
        int v = std::stoi(a, &pos);
        if (pos != a.size()) throw 0;
        return v;
    } catch (...) {
        throw SpecError("expected an integer argument, got " + a);
    }
}

} // namespace

CourantSpec catalog(const std::string& name)
{
    auto [base, arg] = split_name(name);
    if (base == "hyperbolic2" && arg.empty()) return hyperbolic2();
    if (base == "so3" && arg.empty()) return so3(cst(1, 0), "so3", 0);
    if (base == "lie-double-sl2" && arg.empty()) return lie_double_sl2();
    if (base == "t2-kronecker") {
        if (arg.empty() || arg == "nu") return kronecker(Scalar::symbol(), true);
        return kronecker(parse_scalar(arg, ""), false);
    }
    if (base == "t3-exact") return t3_exact(arg.empty() ? Scalar(1) : parse_scalar(arg, ""));
    if (base == "t4-twisted") return t4_twisted(int_arg(arg, 1));
    if (base == "so3-circle") return so3_circle(int_arg(arg, 1));
    if (base == "t4-broken" && arg.empty()) return t4_broken();
    if (base == "t4-charged" && arg.empty()) return charged_t4();
    throw SpecError("unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names()
{
    return {"hyperbolic2", "so3", "lie-double-sl2", "t2-kronecker", "t2-kronecker(1/2)",
            "t3-exact(1)", "t4-twisted(1)", "so3-circle(1)"};
}

std::vector<std::string> catalog_all_names()
{
    auto v = catalog_names();
    v.push_back("t4-charged");
    v.push_back("t4-broken");
    return v;
}

CourantSpec with_nablaB(CourantSpec s, int m, const std::vector<std::vector<CharPoly>>& A)
{
    for (int a = 0; a < s.g; ++a)
        for (int b = 0; b < s.g; ++b) s.nablaB[m][a][b] = A[a][b];
    return s;
}

CourantSpec charged_t4()
{
    CourantSpec s = t4("t4-charged", 3);
    s.g = 2;
    s.metric.assign(2, std::vector<Scalar>(2));
    s.metric[0][1] = s.metric[1][0] = 1;
    s.resize();
    alt_H(s, cst(1, 4));
    s.R[0][1][0] = cst(1, 4);
    s.R[1][0][0] = cst(-1, 4);
    return s;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& s;
    const std::string& sym;
    size_t p = 0;

    void ws() { while (p < s.size() && std::isspace((unsigned char)s[p])) ++p; }
    bool eat(char c)
    {
        ws();
        if (p < s.size() && s[p] == c) { ++p; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& m)
    {
        throw SpecError("bad expression '" + s + "': " + m + " at " + std::to_string(p));
    }
    Scalar expr()
    {
        Scalar v = term();
        while (true) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    Scalar term()
    {
        Scalar v = unary();
        while (true) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                Scalar d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else return v;
        }
    }
    Scalar unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    Scalar power()
    {
        Scalar b = atom();
        if (eat('^')) {
            ws();
            size_t q = p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
            if (q == p) fail("expected exponent");
            int e = std::stoi(s.substr(q, p - q));
            Scalar r(1);
            for (int i = 0; i < e; ++i) r *= b;
            return r;
        }
        return b;
    }
    Scalar atom()
    {
        ws();
        if (eat('(')) {
            Scalar v = expr();
            if (!eat(')')) fail("expected )");
            return v;
        }
        if (p < s.size() && std::isdigit((unsigned char)s[p])) {
            size_t q = p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
            return Scalar(mpq_class(s.substr(q, p - q)));
        }
        if (p < s.size() && (std::isalpha((unsigned char)s[p]) || s[p] == '_')) {
            size_t q = p;
            while (p < s.size() && (std::isalnum((unsigned char)s[p]) || s[p] == '_')) ++p;
            std::string id = s.substr(q, p - q);
            if (sym.empty() || id != sym) fail("undeclared symbol " + id);
            return Scalar::symbol();
        }
        fail("unexpected input");
    }
};

Scalar scalar_of(const json& j, const std::string& sym, const std::string& where)
{
    if (j.is_number_integer()) return Scalar(mpq_class(j.dump()));
    if (!j.is_string()) throw SpecError(where + ": expected an exact string or integer");
    try {
        return parse_scalar(j.get<std::string>(), sym);
    } catch (const SpecError& e) {
        throw SpecError(where + ": " + e.what());
    }
}

CharPoly charsum_of(const json& j, int d, const std::string& sym, const std::string& where)
{
    if (!j.is_array()) return CharPoly(scalar_of(j, sym, where), d);
    CharPoly p;
    for (auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            throw SpecError(where + ": character term must be [weight, coefficient]");
        Weight w;
        for (auto& x : t[0]) {
            if (!x.is_number_integer()) throw SpecError(where + ": weight entries must be integers");
            w.push_back(x.get<int>());
        }
        if (int(w.size()) != d) throw SpecError(where + ": weight has wrong length");
        p += CharPoly::mono(w, scalar_of(t[1], sym, where));
    }
    return p;
}

json charsum_json(const CharPoly& p, const std::string& sym, int d)
{
    bool constant = p.t.empty() || (p.t.size() == 1 && p.t.begin()->first == Weight(d, 0));
    if (constant) return p.t.empty() ? json("0") : json(p.t.begin()->second.str(sym));
    json a = json::array();
    for (auto& [w, c] : p.t) a.push_back(json::array({w, c.str(sym)}));
    return a;
}

int idx(const json& e, const char* key, int n, const std::string& where)
{
    if (!e.contains(key) || !e[key].is_number_integer())
        throw SpecError(where + ": missing integer field '" + key + "'");
    int v = e[key].get<int>();
    if (v < 1 || v > n) throw SpecError(where + ": index '" + key + "' out of range");
    return v - 1;
}

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw SpecError(where + ": missing field '" + key + "'");
    return j[key];
}

Family family_of(const std::string& n)
{
    static const char* names[] = {"Fdual", "Gfiber", "Ffiber", "Pmom-F", "Pmom-B", "Bdual2"};
    for (int i = 0; i < 6; ++i)
        if (n == names[i]) return Family(i);
    throw SpecError("grading: unknown family " + n);
}

} // namespace

Scalar parse_scalar(const std::string& text, const std::string& symbol)
{
    Parser P{text, symbol};
    Scalar v = P.expr();
    P.ws();
    if (P.p != text.size()) P.fail("trailing input");
    return v;
}

CourantSpec load_spec_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("syntax: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("top level must be an object");
    CourantSpec s;
    s.name = j.value("name", std::string("unnamed"));
    if (j.contains("symbols")) {
        auto& sy = j["symbols"];
        if (!sy.is_array()) throw SpecError("symbols: expected a list");
        if (sy.size() > 1) throw SpecError("symbols: at most one transcendental symbol is supported");
        if (sy.size() == 1) s.symbol = sy[0].get<std::string>();
    }
    const std::string& sym = s.symbol;
    auto& base = need(j, "base", "spec");
    auto& d = need(base, "lattice_rank", "base");
    if (!d.is_number_integer() || d.get<int>() < 0) throw SpecError("base.lattice_rank: expected a non-negative integer");
    s.d = d.get<int>();
    auto dirs = [&](const char* key, std::vector<std::vector<Scalar>>& out) {
        if (!base.contains(key)) return;
        for (auto& v : base[key]) {
            std::string where = std::string("base.") + key;
            if (!v.is_array() || int(v.size()) != s.d) throw SpecError(where + ": each direction needs lattice_rank entries");
            std::vector<Scalar> c;
            for (auto& x : v) c.push_back(scalar_of(x, sym, where));
            out.push_back(c);
        }
    };
    dirs("leaf_directions", s.chiF);
    dirs("transverse_directions", s.chiB);

    auto& fib = need(j, "fiber", "spec");
    s.g = need(fib, "rank", "fiber").get<int>();
    s.metric.assign(s.g, std::vector<Scalar>(s.g));
    if (fib.contains("metric")) {
        auto& m = fib["metric"];
        if (!m.is_array() || int(m.size()) != s.g) throw SpecError("fiber.metric: expected rank x rank");
        for (int a = 0; a < s.g; ++a) {
            if (!m[a].is_array() || int(m[a].size()) != s.g) throw SpecError("fiber.metric: expected rank x rank");
            for (int b = 0; b < s.g; ++b) s.metric[a][b] = scalar_of(m[a][b], sym, "fiber.metric");
        }
    }
    s.resize();
    const int nF = s.nF();
    auto entries = [&](const json& parent, const char* key, auto&& fn) {
        if (!parent.contains(key)) return;
        for (auto& e : parent[key]) {
            std::string where = std::string(key);
            fn(e, charsum_of(need(e, "value", where), s.d, sym, where), where);
        }
    };
    entries(fib, "bracket", [&](const json& e, const CharPoly& v, const std::string& w) {
        s.bracket[idx(e, "a", s.g, w)][idx(e, "b", s.g, w)][idx(e, "c", s.g, w)] += v;
    });
    if (j.contains("dissection")) {
        auto& ds = j["dissection"];
        entries(ds, "nablaG", [&](const json& e, const CharPoly& v, const std::string& w) {
            s.nablaG[idx(e, "i", nF, w)][idx(e, "a", s.g, w)][idx(e, "b", s.g, w)] += v;
        });
        entries(ds, "R", [&](const json& e, const CharPoly& v, const std::string& w) {
            s.R[idx(e, "i", nF, w)][idx(e, "j", nF, w)][idx(e, "a", s.g, w)] += v;
        });
        entries(ds, "H", [&](const json& e, const CharPoly& v, const std::string& w) {
            s.H[idx(e, "i", nF, w)][idx(e, "j", nF, w)][idx(e, "k", nF, w)] += v;
        });
    }
    if (j.contains("triple")) {
        auto& tr = j["triple"];
        entries(tr, "nablaF", [&](const json& e, const CharPoly& v, const std::string& w) {
            s.nablaF[idx(e, "i", nF, w)][idx(e, "j", nF, w)][idx(e, "k", nF, w)] += v;
        });
        entries(tr, "nablaB", [&](const json& e, const CharPoly& v, const std::string& w) {
            s.nablaB[idx(e, "m", s.nB(), w)][idx(e, "a", s.g, w)][idx(e, "b", s.g, w)] += v;
        });
    }
    if (j.contains("grading")) {
        auto& gr = j["grading"];
        if (gr.contains("A")) s.grading.A = gr["A"].get<std::vector<std::vector<int>>>();
        if (gr.contains("families"))
            for (auto& [k, v] : gr["families"].items()) s.grading.fam[family_of(k)] = v.get<std::vector<int>>();
    }
    s.approximate_window = j.value("approximate_window", false);
    return s;
}

TaskSection load_task_text(const std::string& text)
{
    TaskSection t;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("syntax: ") + e.what());
    }
    if (!j.is_object() || !j.contains("task")) return t;
    auto& tk = j["task"];
    if (!tk.is_object()) throw SpecError("task: expected an object");
    auto num = [&](const char* key, std::optional<int>& out) {
        if (!tk.contains(key)) return;
        if (!tk[key].is_number_integer()) throw SpecError(std::string("task.") + key + ": expected an integer");
        out = tk[key].get<int>();
    };
    if (tk.contains("command")) {
        if (!tk["command"].is_string()) throw SpecError("task.command: expected a string");
        t.command = tk["command"].get<std::string>();
    }
    num("degrees", t.degrees);
    num("page", t.page);
    num("truncation", t.truncation);
    return t;
}

CourantSpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_spec_text(ss.str());
}

std::string emit_spec(const CourantSpec& s)
{
    const std::string sym = s.symbol;
    auto S = [&](const Scalar& c) { return c.str(sym.empty() ? "nu" : sym); };
    json j;
    j["name"] = s.name;
    j["symbols"] = sym.empty() ? json::array() : json::array({sym});
    auto dirs = [&](const std::vector<std::vector<Scalar>>& v) {
        json a = json::array();
        for (auto& c : v) {
            json r = json::array();
            for (auto& x : c) r.push_back(S(x));
            a.push_back(r);
        }
        return a;
    };
    j["base"] = {{"lattice_rank", s.d}, {"leaf_directions", dirs(s.chiF)}, {"transverse_directions", dirs(s.chiB)}};
    json metric = json::array();
    for (auto& r : s.metric) {
        json row = json::array();
        for (auto& x : r) row.push_back(S(x));
        metric.push_back(row);
    }
    auto cs = [&](const CharPoly& p) { return charsum_json(p, sym.empty() ? "nu" : sym, s.d); };
    json br = json::array();
    for (int a = 0; a < s.g; ++a)
        for (int b = 0; b < s.g; ++b)
            for (int c = 0; c < s.g; ++c)
                if (!s.bracket[a][b][c].is_zero())
                    br.push_back({{"a", a + 1}, {"b", b + 1}, {"c", c + 1}, {"value", cs(s.bracket[a][b][c])}});
    j["fiber"] = {{"rank", s.g}, {"metric", metric}, {"bracket", br}};
    json nG = json::array(), R = json::array(), H = json::array(), nF = json::array(), nB = json::array();
    for (int i = 0; i < s.nF(); ++i) {
        for (int a = 0; a < s.g; ++a)
            for (int b = 0; b < s.g; ++b)
                if (!s.nablaG[i][a][b].is_zero())
                    nG.push_back({{"i", i + 1}, {"a", a + 1}, {"b", b + 1}, {"value", cs(s.nablaG[i][a][b])}});
        for (int k = 0; k < s.nF(); ++k) {
            for (int a = 0; a < s.g; ++a)
                if (!s.R[i][k][a].is_zero())
                    R.push_back({{"i", i + 1}, {"j", k + 1}, {"a", a + 1}, {"value", cs(s.R[i][k][a])}});
            for (int l = 0; l < s.nF(); ++l) {
                if (!s.H[i][k][l].is_zero())
                    H.push_back({{"i", i + 1}, {"j", k + 1}, {"k", l + 1}, {"value", cs(s.H[i][k][l])}});
                if (!s.nablaF[i][k][l].is_zero())
                    nF.push_back({{"i", i + 1}, {"j", k + 1}, {"k", l + 1}, {"value", cs(s.nablaF[i][k][l])}});
            }
        }
    }
    for (int m = 0; m < s.nB(); ++m)
        for (int a = 0; a < s.g; ++a)
            for (int b = 0; b < s.g; ++b)
                if (!s.nablaB[m][a][b].is_zero())
                    nB.push_back({{"m", m + 1}, {"a", a + 1}, {"b", b + 1}, {"value", cs(s.nablaB[m][a][b])}});
    j["dissection"] = {{"nablaG", nG}, {"R", R}, {"H", H}};
    j["triple"] = {{"nablaF", nF}, {"nablaB", nB}};
    json fam = json::object();
    for (auto& [f, v] : s.grading.fam) fam[family_name(f)] = v;
    j["grading"] = {{"A", s.grading.A}, {"families", fam}};
    j["approximate_window"] = s.approximate_window;
    return j.dump(2) + "\n";
}

} // namespace ca

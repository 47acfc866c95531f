#include "banachlab/specparse.hpp"

#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "banachlab/normcore.hpp"

namespace banachlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_p(const std::string& s) {
    std::string t = trim(s);
    if (t == "inf" || t == "infinity" || t == "oo") return std::numeric_limits<double>::infinity();
    return std::stod(t);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

// "name(arg1,arg2,...)" -> {name, args}
bool parse_call(const std::string& s, std::string* name, std::vector<std::string>* args) {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return false;
    *name = trim(s.substr(0, open));
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    args->clear();
    if (!trim(inner).empty()) {
        for (auto& a : split_top_level(inner, ',')) args->push_back(trim(a));
    }
    return true;
}

NormedSpace parse_catalog(const std::string& body) {
    std::string name;
    std::vector<std::string> args;
    if (!parse_call(body, &name, &args)) {
        throw std::invalid_argument("bad catalog spec: '" + body + "'");
    }
    if (name == "lp") {
        if (args.size() != 2) throw std::invalid_argument("catalog:lp needs (dim, p)");
        return build_lp(std::stoi(args[0]), parse_p(args[1]));
    }
    if (name == "euclid") {
        if (args.size() != 1) throw std::invalid_argument("catalog:euclid needs (dim)");
        return build_euclid(std::stoi(args[0]));
    }
    if (name == "ex62" || name == "ex63" || name == "ex64" || name == "ex65") {
        if (args.size() != 1) throw std::invalid_argument("catalog:" + name + " needs (dim)");
        int m = std::stoi(args[0]);
        if (name == "ex62") return build_example_62(m);
        if (name == "ex63") return build_example_63(m);
        if (name == "ex64") return build_example_64(m);
        return build_example_65(m);
    }
    if (name == "arc2d") {
        if (args.size() != 1) throw std::invalid_argument("catalog:arc2d needs (preset)");
        return build_arc2d(arc2d_preset(args[0]));
    }
    throw std::invalid_argument("unknown catalog space '" + name + "'");
}

}  // namespace

std::optional<SumSpace> parse_sum_spec(const std::string& spec, const Resolution& res) {
    std::string s = trim(spec);
    if (s.rfind("sum(", 0) != 0 || s.back() != ')') return std::nullopt;
    std::string inner = s.substr(4, s.size() - 5);
    auto parts = split_top_level(inner, ';');
    if (parts.size() != 2) {
        throw std::invalid_argument("sum spec needs 'sum(E=<abs norm>; <space>, <space>, ...)'");
    }
    std::string epart = trim(parts[0]);
    if (epart.rfind("E=", 0) != 0) throw std::invalid_argument("sum spec must start with E=");
    std::vector<NormedSpace> comps;
    for (auto& c : split_top_level(trim(parts[1]), ',')) {
        comps.push_back(parse_space_spec(trim(c), res));
    }
    AbsoluteNorm E = parse_absolute_spec(trim(epart.substr(2)));
    if (E.dim() != static_cast<int>(comps.size())) {
        throw std::invalid_argument("sum spec: E dimension must equal the component count");
    }
    return build_sum(std::move(comps), std::move(E));
}

NormedSpace parse_space_spec(const std::string& spec, const Resolution& res) {
    std::string s = trim(spec);
    if (s.rfind("catalog:", 0) == 0) return parse_catalog(s.substr(8));
    if (s.rfind("dual:", 0) == 0) {
        return dual_space(parse_space_spec(s.substr(5), res), res);
    }
    if (auto sum = parse_sum_spec(s, res)) return sum->space();
    throw std::invalid_argument("unrecognized space spec '" + spec +
                                "' (expected catalog:..., dual:..., or sum(...))");
}

AbsoluteNorm parse_absolute_spec(const std::string& spec) {
    std::string s = trim(spec);
    if (s.rfind("file:", 0) == 0) {
        std::ifstream in(s.substr(5));
        if (!in) throw std::invalid_argument("cannot open absolute-norm file " + s.substr(5));
        nlohmann::json j;
        in >> j;
        std::string kind = j.at("kind").get<std::string>();
        int m = j.at("m").get<int>();
        if (kind == "lp") {
            double p = j.at("p").is_string() ? parse_p(j.at("p").get<std::string>())
                                             : j.at("p").get<double>();
            return build_absolute_lp(m, p);
        }
        if (kind == "weighted-lp") {
            double p = j.at("p").is_string() ? parse_p(j.at("p").get<std::string>())
                                             : j.at("p").get<double>();
            return build_absolute_weighted_lp(m, p, j.at("weights").get<std::vector<double>>());
        }
        throw std::invalid_argument("absolute-norm file: unknown kind '" + kind + "'");
    }
    if (s.rfind("catalog:", 0) == 0) s = s.substr(8);
    std::string name;
    std::vector<std::string> args;
    if (!parse_call(s, &name, &args)) throw std::invalid_argument("bad absolute norm spec '" + spec + "'");
    if (name == "lp") {
        if (args.size() != 2) throw std::invalid_argument("lp absolute norm needs (m, p)");
        return build_absolute_lp(std::stoi(args[0]), parse_p(args[1]));
    }
    if (name == "wlp") {
        // wlp(m,p;w1,...,wm) arrives with ';' inside the second argument.
        if (args.size() < 2) throw std::invalid_argument("wlp needs (m,p;w1,...)");
        auto semi = split_top_level(args[1], ';');
        if (semi.size() != 2) throw std::invalid_argument("wlp needs (m,p;w1,...)");
        int m = std::stoi(args[0]);
        double p = parse_p(semi[0]);
        std::vector<double> ws;
        ws.push_back(std::stod(trim(semi[1])));
        for (std::size_t i = 2; i < args.size(); ++i) ws.push_back(std::stod(args[i]));
        return build_absolute_weighted_lp(m, p, std::move(ws));
    }
    throw std::invalid_argument("unknown absolute norm '" + name + "'");
}

std::vector<std::string> catalog_listing() {
    return {
        "catalog:lp(<dim>,<p>)        lp norm, p in [1,inf] ('inf' for the max norm)",
        "catalog:euclid(<dim>)        alias for lp(<dim>,2)",
        "catalog:ex62(<dim>)          |x|^2 = |x|_1^2 + |x|_2^2 (LUR renorming of l1)",
        "catalog:ex63(<dim>)          max{|x(1)|,|x'|_2}^2 + |Tx|_2^2, weights 1/k",
        "catalog:ex64(<dim>)          max{|x(1)|,|x'|_1} + |x|_2 (rotund, not mluacs)",
        "catalog:ex65(<dim>)          |x|_1^2 + |x'|_2^2 + (|x'|_1+|x|_2)^2 (MLUR, not luacs)",
        "catalog:arc2d(ex61)          flat top/bottom, smooth junctions, corners on the x-axis",
        "catalog:arc2d(fig5)          rounded diamond: sharp at (+-2,0), rounded at top/bottom",
        "dual:<spec>                  numerical dual of any spec",
        "sum(E=<abs>; <spec>, ...)    absolute sum with E = lp(m,p) / wlp / file:<json>",
    };
}

}  // namespace banachlab

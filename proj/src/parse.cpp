#include "xent/parse.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace xent::parse {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double number(const std::string& text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw ParseError("trailing characters in number: " + text);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("not a number: '" + text + "'");
    }
}

// Splits at top-level commas, respecting [] nesting.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

struct SpecForm {
    std::string name;
    std::map<std::string, std::string> kv;
};

SpecForm parse_form(const std::string& spec) {
    const std::string s = trim(spec);
    const auto open = s.find('{');
    if (open == std::string::npos || s.back() != '}')
        throw ParseError("expected name{key=value,...}, got '" + spec + "'");
    SpecForm form;
    form.name = trim(s.substr(0, open));
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    for (const auto& part : split_top(body)) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in '" + part + "'");
        const std::string key = trim(part.substr(0, eq));
        const std::string val = trim(part.substr(eq + 1));
        if (form.kv.count(key)) throw ParseError("duplicate key '" + key + "'");
        form.kv[key] = val;
    }
    return form;
}

double want(const SpecForm& f, const std::string& key) {
    const auto it = f.kv.find(key);
    if (it == f.kv.end())
        throw ParseError(f.name + ": missing parameter '" + key + "'");
    return number(it->second);
}

void expect_keys(const SpecForm& f, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : f.kv) {
        bool known = false;
        for (const char* key : keys)
            if (k == key) known = true;
        if (!known) throw ParseError(f.name + ": unknown parameter '" + k + "'");
    }
}

std::vector<double> vector_literal(const std::string& text) {
    const std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("expected [v,v,...], got '" + text + "'");
    std::vector<double> out;
    for (const auto& p : split_top(s.substr(1, s.size() - 2))) out.push_back(number(p));
    return out;
}

linalg::Matrix matrix_literal(const std::string& text) {
    const std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("expected [[...],[...]], got '" + text + "'");
    std::vector<std::vector<double>> rows;
    for (const auto& p : split_top(s.substr(1, s.size() - 2)))
        rows.push_back(vector_literal(p));
    if (rows.empty()) throw ParseError("empty matrix literal");
    linalg::Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw ParseError("ragged matrix literal");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

FamilyDescriptor distribution(const std::string& spec) {
    const SpecForm f = parse_form(spec);
    const auto tag = family_from_name(f.name);
    if (!tag) throw ParseError("unknown family '" + f.name + "'");
    switch (*tag) {
        case FamilyTag::Beta:
            expect_keys(f, {"a", "b"});
            return FamilyDescriptor::beta(want(f, "a"), want(f, "b"));
        case FamilyTag::ChiScaled:
            expect_keys(f, {"k", "var"});
            return FamilyDescriptor::chi_scaled(want(f, "k"), want(f, "var"));
        case FamilyTag::ChiNonScaled:
            expect_keys(f, {"k"});
            return FamilyDescriptor::chi(want(f, "k"));
        case FamilyTag::ChiSquared:
            expect_keys(f, {"nu"});
            return FamilyDescriptor::chi_squared(want(f, "nu"));
        case FamilyTag::Exponential:
            expect_keys(f, {"lambda"});
            return FamilyDescriptor::exponential(want(f, "lambda"));
        case FamilyTag::Gamma:
            expect_keys(f, {"k", "theta"});
            return FamilyDescriptor::gamma(want(f, "k"), want(f, "theta"));
        case FamilyTag::GaussianUni:
            expect_keys(f, {"mu", "var"});
            return FamilyDescriptor::gaussian(want(f, "mu"), want(f, "var"));
        case FamilyTag::GaussianMulti: {
            expect_keys(f, {"mu", "cov"});
            const auto mu_it = f.kv.find("mu");
            const auto cov_it = f.kv.find("cov");
            if (mu_it == f.kv.end() || cov_it == f.kv.end())
                throw ParseError("mvgaussian needs mu=[...] and cov=[[...],...]");
            return FamilyDescriptor::gaussian_multi(vector_literal(mu_it->second),
                                                    matrix_literal(cov_it->second));
        }
        case FamilyTag::Gumbel:
            expect_keys(f, {"mu", "beta"});
            return FamilyDescriptor::gumbel(want(f, "mu"), want(f, "beta"));
        case FamilyTag::HalfNormal:
            expect_keys(f, {"var"});
            return FamilyDescriptor::half_normal(want(f, "var"));
        case FamilyTag::Laplace0:
            expect_keys(f, {"b"});
            return FamilyDescriptor::laplace0(want(f, "b"));
        case FamilyTag::MaxwellBoltzmann:
            expect_keys(f, {"var"});
            return FamilyDescriptor::maxwell(want(f, "var"));
        case FamilyTag::Pareto:
            expect_keys(f, {"lambda", "m"});
            return FamilyDescriptor::pareto(want(f, "lambda"), want(f, "m"));
        case FamilyTag::Rayleigh:
            expect_keys(f, {"var"});
            return FamilyDescriptor::rayleigh(want(f, "var"));
    }
    throw ParseError("unreachable family");
}

gp::SpectralDensity spectrum(const std::string& spec) {
    const SpecForm f = parse_form(spec);
    if (f.name == "white") {
        expect_keys(f, {"s2"});
        return gp::SpectralDensity::white(want(f, "s2"));
    }
    if (f.name == "ar1") {
        expect_keys(f, {"rho", "s2"});
        return gp::SpectralDensity::ar1(want(f, "rho"), want(f, "s2"));
    }
    if (f.name == "table") {
        expect_keys(f, {"file"});
        const auto it = f.kv.find("file");
        if (it == f.kv.end()) throw ParseError("table{file=...} needs a path");
        std::ifstream in(it->second);
        if (!in) throw ParseError("cannot open spectral table '" + it->second + "'");
        std::vector<std::pair<double, double>> pts;
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::istringstream row(t);
            double lam, val;
            if (!(row >> lam >> val))
                throw ParseError("bad spectral table row: '" + line + "'");
            pts.emplace_back(lam, val);
        }
        return gp::SpectralDensity::from_table(std::move(pts));
    }
    throw ParseError("unknown spectrum '" + f.name + "' (white, ar1, table)");
}

AlphaOrder alpha(const std::string& text) {
    const std::string t = trim(text);
    if (t == "shannon") return AlphaOrder::shannon();
    try {
        return AlphaOrder(number(t));
    } catch (const InvalidParameters& e) {
        throw ParseError(std::string("bad alpha '") + text + "': " + e.what());
    }
}

MarkovFile markov_source(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open markov file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ParseError("bad JSON in '" + path + "': " + e.what());
    }
    nlohmann::json jmat;
    nlohmann::json jinit;
    if (doc.is_array()) {
        jmat = doc;
    } else if (doc.is_object()) {
        if (doc.contains("transition")) jmat = doc["transition"];
        else if (doc.contains("P")) jmat = doc["P"];
        else throw ParseError("markov JSON object needs a 'transition' (or 'P') key");
        if (doc.contains("initial")) jinit = doc["initial"];
        else if (doc.contains("p")) jinit = doc["p"];
    } else {
        throw ParseError("markov JSON must be a matrix or an object");
    }
    if (!jmat.is_array() || jmat.empty())
        throw ParseError("markov transition must be a nonempty array of rows");
    const std::size_t n = jmat.size();
    linalg::Matrix p(n, n);
    bool renorm = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!jmat[i].is_array() || jmat[i].size() != n)
            throw ParseError("markov transition must be square");
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            p(i, j) = jmat[i][j].get<double>();
            if (p(i, j) < 0.0)
                throw ParseError("markov transition entries must be nonnegative");
            row += p(i, j);
        }
        if (std::fabs(row - 1.0) > 1e-9)
            throw ParseError("markov row " + std::to_string(i) + " sums to " +
                             std::to_string(row) + " (tolerance 1e-9)");
        if (row != 1.0) {
            renorm = true;
            for (std::size_t j = 0; j < n; ++j) p(i, j) /= row;
        }
    }
    std::vector<double> init;
    if (!jinit.is_null()) {
        if (!jinit.is_array() || jinit.size() != n)
            throw ParseError("markov initial distribution length mismatch");
        double total = 0.0;
        for (const auto& v : jinit) {
            init.push_back(v.get<double>());
            total += init.back();
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw ParseError("markov initial distribution must sum to 1");
        for (auto& v : init) v /= total;
    } else {
        init.assign(n, 1.0 / static_cast<double>(n));
    }
    return {markov::MarkovSource::make(std::move(p), std::move(init)), renorm};
}

}  // namespace xent::parse

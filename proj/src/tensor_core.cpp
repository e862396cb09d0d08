#include "bilistab/tensor_core.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bilistab/errors.hpp"

namespace bilistab {

DenseTensor3::DenseTensor3(int m, int n, int p) : dims_{m, n, p} {
    if (m < 1 || n < 1 || p < 1) throw ContractViolation("DenseTensor3: dims must be positive");
    entries_.resize(static_cast<size_t>(m) * n * p);
}

namespace {

bool is_zero_vector(const CoeffVector& v) {
    for (const auto& c : v) {
        if (!c.is_zero()) return false;
    }
    return true;
}

}  // namespace

BilinearDecomposition::BilinearDecomposition(std::string name, std::array<int, 3> dims,
                                             std::vector<Term> terms,
                                             std::optional<double> known_nuclear_norm,
                                             std::optional<std::string> growth_closed_form)
    : name_(std::move(name)),
      dims_(dims),
      terms_(std::move(terms)),
      known_nuclear_norm_(known_nuclear_norm),
      growth_closed_form_(std::move(growth_closed_form)) {
    if (dims_[0] < 1 || dims_[1] < 1 || dims_[2] < 1) {
        throw ContractViolation(name_ + ": dims must be positive");
    }
    if (terms_.empty()) throw ContractViolation(name_ + ": a decomposition needs >= 1 term");
    for (size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        if (static_cast<int>(t.u.size()) != dims_[0] || static_cast<int>(t.v.size()) != dims_[1] ||
            static_cast<int>(t.w.size()) != dims_[2]) {
            throw ContractViolation(name_ + ": term " + std::to_string(i + 1) +
                                    " has vector lengths not matching dims");
        }
        if (is_zero_vector(t.u) || is_zero_vector(t.v) || is_zero_vector(t.w)) {
            throw ContractViolation(name_ + ": term " + std::to_string(i + 1) +
                                    " is a zero triple");
        }
    }
    views_.reserve(terms_.size());
    for (const Term& t : terms_) {
        TermView view;
        view.u.reserve(t.u.size());
        view.v.reserve(t.v.size());
        view.w.reserve(t.w.size());
        for (const auto& c : t.u) view.u.push_back(c.to_double());
        for (const auto& c : t.v) view.v.push_back(c.to_double());
        for (const auto& c : t.w) view.w.push_back(c.to_double());
        views_.push_back(std::move(view));
    }
}

namespace {

double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double growth_factor(const BilinearDecomposition& d, NormSpec norms) {
    (void)norms;  // only NormSpec::euclidean exists
    double total = 0.0;
    for (const auto& view : d.term_views()) {
        total += euclidean_norm(view.u) * euclidean_norm(view.v) * euclidean_norm(view.w);
    }
    return total;
}

std::vector<double> evaluate(const BilinearDecomposition& d, std::span<const double> u,
                             std::span<const double> v) {
    const auto& dims = d.dims();
    if (static_cast<int>(u.size()) != dims[0] || static_cast<int>(v.size()) != dims[1]) {
        throw ContractViolation(d.name() + ": evaluate input lengths do not match dims");
    }
    std::vector<double> out(dims[2], 0.0);
    for (const auto& view : d.term_views()) {
        double phi = 0.0;
        for (size_t j = 0; j < view.u.size(); ++j) phi += view.u[j] * u[j];
        double psi = 0.0;
        for (size_t k = 0; k < view.v.size(); ++k) psi += view.v[k] * v[k];
        const double c = phi * psi;
        for (size_t l = 0; l < view.w.size(); ++l) out[l] += c * view.w[l];
    }
    return out;
}

DenseTensor3 materialize_tensor(const BilinearDecomposition& d) {
    const auto& dims = d.dims();
    DenseTensor3 t(dims[0], dims[1], dims[2]);
    for (const Term& term : d.terms()) {
        for (int j = 0; j < dims[0]; ++j) {
            if (term.u[j].is_zero()) continue;
            for (int k = 0; k < dims[1]; ++k) {
                if (term.v[k].is_zero()) continue;
                const ExactScalar uv = term.u[j] * term.v[k];
                for (int l = 0; l < dims[2]; ++l) {
                    if (term.w[l].is_zero()) continue;
                    t.at(j, k, l) += uv * term.w[l];
                }
            }
        }
    }
    return t;
}

bool verify_decomposition(const BilinearDecomposition& d, const DenseTensor3& reference) {
    if (d.dims() != reference.dims()) {
        throw ContractViolation(d.name() + ": reference tensor dims differ");
    }
    return materialize_tensor(d) == reference;
}

DenseTensor3 matmul_tensor(int m, int n, int p) {
    if (m < 1 || n < 1 || p < 1) throw ContractViolation("matmul_tensor: dims must be positive");
    DenseTensor3 t(m * n, n * p, m * p);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < p; ++k) {
                t.at(i * n + j, j * p + k, i * p + k) = ExactScalar(1);
            }
        }
    }
    return t;
}

DenseTensor3 complex_mult_tensor() {
    DenseTensor3 t(2, 2, 2);
    // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
    t.at(0, 0, 0) = ExactScalar(1);
    t.at(1, 1, 0) = ExactScalar(-1);
    t.at(0, 1, 1) = ExactScalar(1);
    t.at(1, 0, 1) = ExactScalar(1);
    return t;
}

// --- JSON ------------------------------------------------------------------

namespace {

bool fits_long(const mpz_class& z) { return z.fits_slong_p(); }

nlohmann::json integer_to_json(const mpz_class& z) {
    if (fits_long(z)) return static_cast<long>(z.get_si());
    return z.get_str();  // arbitrary precision falls back to a digit string
}

mpz_class integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        BigRational q = parse_decimal_rational(s);
        if (q.get_den() != 1) throw ContractViolation("expected an integer, got '" + s + "'");
        return q.get_num();
    }
    throw ContractViolation("expected an integer (number or digit string)");
}

nlohmann::json rational_to_json_pair(const BigRational& q) {
    return nlohmann::json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

BigRational rational_from_json_pair(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ContractViolation("rational must be a [numerator, denominator] pair");
    }
    mpz_class num = integer_from_json(j[0]);
    mpz_class den = integer_from_json(j[1]);
    if (den == 0) throw ContractViolation("rational denominator must be nonzero");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

nlohmann::json coefficient_to_json(const ExactScalar& c) {
    if (c.is_rational() && c.rational_part().get_den() == 1 &&
        fits_long(c.rational_part().get_num())) {
        return static_cast<long>(c.rational_part().get_num().get_si());
    }
    nlohmann::json j;
    j["a"] = rational_to_json_pair(c.rational_part());
    j["b"] = rational_to_json_pair(c.sqrt3_part());
    return j;
}

ExactScalar coefficient_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return ExactScalar(BigRational(static_cast<long>(j.get<int64_t>())));
    if (j.is_number_float()) return ExactScalar(double_to_rational(j.get<double>()));
    if (j.is_string()) return ExactScalar(parse_decimal_rational(j.get<std::string>()));
    if (j.is_object()) {
        BigRational a(0), b(0);
        if (j.contains("a")) a = rational_from_json_pair(j.at("a"));
        if (j.contains("b")) b = rational_from_json_pair(j.at("b"));
        return {a, b};
    }
    throw ContractViolation("coefficient must be a number or an {a, b} object");
}

CoeffVector coeff_vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ContractViolation("coefficient vector must be an array");
    CoeffVector v;
    v.reserve(j.size());
    for (const auto& c : j) v.push_back(coefficient_from_json(c));
    return v;
}

nlohmann::json coeff_vector_to_json(const CoeffVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : v) arr.push_back(coefficient_to_json(c));
    return arr;
}

/// Rewrites every numeric token outside string literals into a quoted string
/// so that decimal literals such as 0.1 reach the rational parser verbatim
/// instead of being rounded to double by the JSON number pipeline.
std::string quote_numeric_tokens(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 16);
    bool in_string = false;
    bool escaped = false;
    const auto is_number_char = [](char c) {
        return (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.' || c == 'e' || c == 'E';
    };
    for (size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (in_string) {
            out += c;
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            ++i;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            ++i;
            continue;
        }
        if ((c >= '0' && c <= '9') || ((c == '-' || c == '+') && i + 1 < text.size() &&
                                       ((text[i + 1] >= '0' && text[i + 1] <= '9') ||
                                        text[i + 1] == '.'))) {
            size_t j = i;
            while (j < text.size() && is_number_char(text[j])) ++j;
            out += '"';
            out.append(text, i, j - i);
            out += '"';
            i = j;
            continue;
        }
        out += c;
        ++i;
    }
    return out;
}

}  // namespace

nlohmann::json decomposition_to_json(const BilinearDecomposition& d) {
    nlohmann::json j;
    j["name"] = d.name();
    j["dims"] = {d.dims()[0], d.dims()[1], d.dims()[2]};
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& t : d.terms()) {
        nlohmann::json jt;
        jt["u"] = coeff_vector_to_json(t.u);
        jt["v"] = coeff_vector_to_json(t.v);
        jt["w"] = coeff_vector_to_json(t.w);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    if (d.known_nuclear_norm()) j["known_nuclear_norm"] = *d.known_nuclear_norm();
    if (d.growth_closed_form()) j["known_growth_factor_closed_form"] = *d.growth_closed_form();
    return j;
}

BilinearDecomposition decomposition_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ContractViolation("decomposition JSON must be an object");
    std::string name = j.value("name", std::string("unnamed"));
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 3) {
        throw ContractViolation("decomposition JSON needs \"dims\": [m, n, p]");
    }
    std::array<int, 3> dims{};
    for (int i = 0; i < 3; ++i) {
        const auto& dj = j.at("dims")[i];
        if (dj.is_number_integer()) {
            dims[i] = dj.get<int>();
        } else if (dj.is_string()) {
            BigRational q = parse_decimal_rational(dj.get<std::string>());
            if (q.get_den() != 1 || !q.get_num().fits_sint_p()) {
                throw ContractViolation("dims entries must be integers");
            }
            dims[i] = static_cast<int>(q.get_num().get_si());
        } else {
            throw ContractViolation("dims entries must be integers");
        }
    }
    if (!j.contains("terms") || !j.at("terms").is_array()) {
        throw ContractViolation("decomposition JSON needs a \"terms\" array");
    }
    std::vector<Term> terms;
    terms.reserve(j.at("terms").size());
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.u = coeff_vector_from_json(jt.at("u"));
        t.v = coeff_vector_from_json(jt.at("v"));
        t.w = coeff_vector_from_json(jt.at("w"));
        terms.push_back(std::move(t));
    }
    std::optional<double> nuclear;
    if (j.contains("known_nuclear_norm")) {
        const auto& nj = j.at("known_nuclear_norm");
        nuclear = nj.is_string() ? to_nearest_double(parse_decimal_rational(nj.get<std::string>()))
                                 : nj.get<double>();
    }
    std::optional<std::string> closed_form;
    if (j.contains("known_growth_factor_closed_form")) {
        closed_form = j.at("known_growth_factor_closed_form").get<std::string>();
    }
    return {std::move(name), dims, std::move(terms), nuclear, std::move(closed_form)};
}

BilinearDecomposition parse_decomposition_text(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(quote_numeric_tokens(json_text));
    return decomposition_from_json(j);
}

BilinearDecomposition load_decomposition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_decomposition_text(buf.str());
}

void save_decomposition(const BilinearDecomposition& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ContractViolation("cannot write '" + path + "'");
    out << decomposition_to_json(d).dump(2) << '\n';
}

}  // namespace bilistab

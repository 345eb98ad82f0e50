#include "tmoment/io.hpp"

#include "tmoment/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace tmoment {

NumberMode parse_number_mode(const std::string& s)
{
    if (s == "auto") return NumberMode::Auto;
    if (s == "exact") return NumberMode::Exact;
    if (s == "float") return NumberMode::Float;
    throw InputError("--mode", "expected exact, float or auto, got '" + s + "'");
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path, std::string("malformed JSON: ") + e.what());
    }
}

void save_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw InputError(path, "cannot write file");
    out << j.dump(2) << '\n';
}

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(path.empty() ? key : path + "." + key, "missing key");
    return *it;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int read_int(const Json& v, const std::string& path)
{
    if (!v.is_number_integer()) throw InputError(path, "expected an integer");
    return v.get<int>();
}

const Json& read_array(const Json& v, const std::string& path)
{
    if (!v.is_array()) throw InputError(path, "expected an array");
    return v;
}

int read_dimension(const Json& j)
{
    const int d = read_int(member(j, "d", ""), "d");
    if (d < 1) throw InputError("d", "dimension must be >= 1");
    return d;
}

Point read_point(const Json& v, int d, const std::string& path, NumberMode mode)
{
    read_array(v, path);
    if (static_cast<int>(v.size()) != d)
        throw InputError(path, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(v.size()));
    Point w;
    for (std::size_t i = 0; i < v.size(); ++i) w.push_back(read_scalar(v[i], child(path, i), mode));
    return w;
}

Json point_to_json(const Point& w)
{
    Json a = Json::array();
    for (const auto& c : w) a.push_back(scalar_to_json(c));
    return a;
}

}  // namespace

Scalar read_scalar(const Json& v, const std::string& path, NumberMode mode)
{
    Scalar s;
    try {
        if (v.is_string()) {
            s = Scalar::parse(v.get<std::string>(), mode == NumberMode::Exact);
        } else if (v.is_number_integer()) {
            s = Scalar::parse(v.dump(), false);
        } else if (v.is_number_float()) {
            const double x = v.get<double>();
            s = mode == NumberMode::Exact ? Scalar(decimal_to_rational(format_double(x))) : Scalar::real(x);
        } else {
            throw InputError(path, "expected a number or a numeric string");
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(path, std::string("invalid value: ") + e.what());
    }
    return mode == NumberMode::Float ? s.as_float() : s;
}

Json scalar_to_json(const Scalar& s) { return s.to_string(); }

Multisequence read_moments(const Json& j, NumberMode mode)
{
    const int d = read_dimension(j);
    const int degree = read_int(member(j, "degree", ""), "degree");
    if (degree < 0 || degree % 2) throw InputError("degree", "degree must be even and >= 0");
    const Json& list = read_array(member(j, "moments", ""), "moments");
    const auto indices = monomial_basis(d, degree);
    std::vector<std::optional<Scalar>> values(indices.size());
    for (std::size_t t = 0; t < list.size(); ++t) {
        const std::string path = child("moments", t);
        const Json& idx = read_array(member(list[t], "idx", path), child(path, "idx"));
        if (static_cast<int>(idx.size()) != d)
            throw InputError(child(path, "idx"), "expected " + std::to_string(d) + " exponents");
        MultiIndex e;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const int v = read_int(idx[k], child(child(path, "idx"), k));
            if (v < 0) throw InputError(child(child(path, "idx"), k), "exponent must be >= 0");
            e.push_back(v);
        }
        if (total_degree(e) > degree)
            throw InputError(child(path, "idx"), "index beyond degree " + std::to_string(degree));
        const std::size_t pos = deglex_position(e);
        if (values[pos]) throw InputError(child(path, "idx"), "duplicate index " + monomial_name(e));
        values[pos] = read_scalar(member(list[t], "value", path), child(path, "value"), mode);
    }
    std::vector<std::string> missing;
    std::vector<Scalar> out;
    for (std::size_t p = 0; p < indices.size(); ++p) {
        if (!values[p]) {
            std::ostringstream s;
            s << '[';
            for (std::size_t k = 0; k < indices[p].size(); ++k) s << (k ? "," : "") << indices[p][k];
            s << ']';
            missing.push_back(s.str());
        } else {
            out.push_back(*values[p]);
        }
    }
    if (!missing.empty()) {
        std::string msg = "missing " + std::to_string(missing.size()) + " of " + std::to_string(indices.size()) +
                          " indices:";
        for (std::size_t k = 0; k < missing.size() && k < 20; ++k) msg += " " + missing[k];
        if (missing.size() > 20) msg += " ...";
        throw InputError("moments", msg);
    }
    return Multisequence(d, degree, std::move(out));
}

Json moments_to_json(const Multisequence& beta)
{
    Json j;
    j["d"] = beta.dimension();
    j["degree"] = beta.degree();
    Json list = Json::array();
    for (std::size_t t = 0; t < beta.indices().size(); ++t)
        list.push_back(Json{{"idx", beta.indices()[t]}, {"value", scalar_to_json(beta.values()[t])}});
    j["moments"] = list;
    return j;
}

std::vector<Point> read_points(const Json& j, NumberMode mode)
{
    const int d = read_dimension(j);
    const Json& list = read_array(member(j, "points", ""), "points");
    std::vector<Point> pts;
    for (std::size_t t = 0; t < list.size(); ++t) pts.push_back(read_point(list[t], d, child("points", t), mode));
    return pts;
}

Json points_to_json(int d, const std::vector<Point>& points)
{
    Json j;
    j["d"] = d;
    Json list = Json::array();
    for (const auto& w : points) list.push_back(point_to_json(w));
    j["points"] = list;
    return j;
}

AtomicMeasure read_measure(const Json& j, NumberMode mode)
{
    AtomicMeasure mu;
    mu.d = read_dimension(j);
    const Json& list = read_array(member(j, "atoms", ""), "atoms");
    for (std::size_t t = 0; t < list.size(); ++t) {
        const std::string path = child("atoms", t);
        mu.atoms.push_back(read_point(member(list[t], "point", path), mu.d, child(path, "point"), mode));
        mu.densities.push_back(read_scalar(member(list[t], "density", path), child(path, "density"), mode));
    }
    return mu;
}

Json measure_to_json(const AtomicMeasure& mu)
{
    Json j;
    j["d"] = mu.d;
    Json list = Json::array();
    for (std::size_t t = 0; t < mu.atoms.size(); ++t)
        list.push_back(Json{{"point", point_to_json(mu.atoms[t])}, {"density", scalar_to_json(mu.densities[t])}});
    j["atoms"] = list;
    return j;
}

SignedFunctional read_functional(const Json& j, NumberMode mode)
{
    SignedFunctional f;
    f.d = read_dimension(j);
    const Json& atoms = read_array(member(j, "atoms", ""), "atoms");
    const Json& weights = read_array(member(j, "weights", ""), "weights");
    if (atoms.size() != weights.size()) throw InputError("weights", "expected one weight per atom");
    for (std::size_t t = 0; t < atoms.size(); ++t) {
        f.atoms.push_back(read_point(atoms[t], f.d, child("atoms", t), mode));
        f.weights.push_back(read_scalar(weights[t], child("weights", t), mode));
    }
    if (j.contains("derivation") && !j["derivation"].is_null()) {
        if (f.d != 2) throw InputError("derivation", "a derivation term needs d = 2");
        const Json& dj = j["derivation"];
        FunctionalDerivation fd;
        fd.a0 = read_scalar(member(dj, "a0", "derivation"), "derivation.a0", mode);
        fd.d.point = read_point(member(dj, "point", "derivation"), 2, "derivation.point", mode);
        fd.d.direction = read_point(member(dj, "direction", "derivation"), 2, "derivation.direction", mode);
        f.derivation = fd;
    }
    return f;
}

Json functional_to_json(const SignedFunctional& f)
{
    Json j;
    j["d"] = f.d;
    Json atoms = Json::array(), weights = Json::array();
    for (std::size_t t = 0; t < f.atoms.size(); ++t) {
        atoms.push_back(point_to_json(f.atoms[t]));
        weights.push_back(scalar_to_json(f.weights[t]));
    }
    j["atoms"] = atoms;
    j["weights"] = weights;
    if (f.derivation)
        j["derivation"] = Json{{"a0", scalar_to_json(f.derivation->a0)},
                               {"point", point_to_json(f.derivation->d.point)},
                               {"direction", point_to_json(f.derivation->d.direction)}};
    return j;
}

}  // namespace tmoment

#include "qcorr/io.hpp"

#include "qcorr/error.hpp"

#include <fstream>
#include <sstream>

namespace qcorr {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name))
        throw Error(ErrorCode::ParseError, std::string("missing field '") + name + "'");
    return doc.at(name);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number())
        throw Error(ErrorCode::ParseError, what + " must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& what) {
    if (!j.is_number_integer())
        throw Error(ErrorCode::ParseError, what + " must be an integer");
    return j.get<int>();
}

Vec3 vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw Error(ErrorCode::ParseError, what + " must be an array of 3 numbers");
    return Vec3(number(j[0], what), number(j[1], what), number(j[2], what));
}

RMatrix real_matrix(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw Error(ErrorCode::ParseError, what + " has the wrong number of rows");
    RMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw Error(ErrorCode::ParseError, what + " has the wrong number of columns");
        for (int c = 0; c < cols; ++c)
            m(r, c) = number(row[static_cast<std::size_t>(c)], what);
    }
    return m;
}

CatalogParams catalog_params(const json& j) {
    CatalogParams p;
    if (j.is_null())
        return p;
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "params must be an object");
    for (const auto& [k, v] : j.items())
        p[k] = number(v, "parameter " + k);
    return p;
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, origin + ": " + e.what());
    }
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

LoadedState state_from_json(const json& doc) {
    const json& kind_field = field(doc, "kind");
    if (!kind_field.is_string())
        throw Error(ErrorCode::ParseError, "kind must be a string");
    StateSpec spec;
    spec.kind = kind_field.get<std::string>();
    spec.source = doc;

    if (spec.kind == "matrix") {
        const int da = integer(field(doc, "dimA"), "dimA");
        const int db = integer(field(doc, "dimB"), "dimB");
        if (da < 1 || db < 1 || da * db > 64)
            throw Error(ErrorCode::WrongDimension, "unsupported dimensions");
        const int d = da * db;
        const RMatrix re = real_matrix(field(doc, "re"), d, d, "re");
        const RMatrix im = doc.contains("im") ? real_matrix(doc.at("im"), d, d, "im") : RMatrix::Zero(d, d);
        CMatrix m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) = cplx(re(r, c), im(r, c));
        return {spec, density_from_matrix(m, da, db)};
    }
    if (spec.kind == "pauli") {
        PauliRepresentation rep;
        rep.a = vec3(field(doc, "a"), "a");
        rep.b = vec3(field(doc, "b"), "b");
        rep.T = real_matrix(field(doc, "T"), 3, 3, "T");
        return {spec, pauli_compose(rep)};
    }
    if (spec.kind == "catalog") {
        const json& name = field(doc, "name");
        if (!name.is_string())
            throw Error(ErrorCode::ParseError, "name must be a string");
        spec.catalog_id = name.get<std::string>();
        spec.params = catalog_params(doc.contains("params") ? doc.at("params") : json());
        return {spec, catalog_state(spec.catalog_id, spec.params)};
    }
    throw Error(ErrorCode::ParseError, "unknown state kind '" + spec.kind + "'");
}

LoadedState load_state_file(const std::string& path) { return state_from_json(read_json_file(path)); }

LoadedState load_state_argument(const std::string& argument) {
    const std::string prefix = "catalog:";
    if (argument.rfind(prefix, 0) != 0)
        return load_state_file(argument);
    std::string rest = argument.substr(prefix.size());
    json doc{{"kind", "catalog"}};
    const auto colon = rest.find(':');
    doc["name"] = rest.substr(0, colon);
    json params = json::object();
    if (colon != std::string::npos) {
        std::stringstream ss(rest.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw Error(ErrorCode::ParseError, "catalog parameters must look like name=value");
            try {
                std::size_t used = 0;
                const std::string value = item.substr(eq + 1);
                const double v = std::stod(value, &used);
                if (used != value.size())
                    throw std::invalid_argument(value);
                params[item.substr(0, eq)] = v;
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::ParseError, "bad parameter value in '" + item + "'");
            }
        }
    }
    doc["params"] = params;
    return state_from_json(doc);
}

NoSignalingBox box_from_json(const json& doc) {
    const int nx = integer(field(doc, "nx"), "nx");
    const int ny = integer(field(doc, "ny"), "ny");
    const int na = integer(field(doc, "na"), "na");
    const int nb = integer(field(doc, "nb"), "nb");
    if (nx < 1 || ny < 1 || na < 1 || nb < 1 || nx > 16 || ny > 16 || na > 16 || nb > 16)
        throw Error(ErrorCode::InvalidBox, "box dimensions out of range");
    const json& p = field(doc, "p");
    NoSignalingBox box(nx, ny, na, nb);
    auto check = [](const json& j, int n, const char* what) {
        if (!j.is_array() || static_cast<int>(j.size()) != n)
            throw Error(ErrorCode::ParseError, std::string("p has the wrong extent along ") + what);
    };
    check(p, nx, "x");
    for (int x = 0; x < nx; ++x) {
        const json& px = p[static_cast<std::size_t>(x)];
        check(px, ny, "y");
        for (int y = 0; y < ny; ++y) {
            const json& pxy = px[static_cast<std::size_t>(y)];
            check(pxy, na, "a");
            for (int a = 0; a < na; ++a) {
                const json& pxya = pxy[static_cast<std::size_t>(a)];
                check(pxya, nb, "b");
                for (int b = 0; b < nb; ++b)
                    box(x, y, a, b) = number(pxya[static_cast<std::size_t>(b)], "p entry");
            }
        }
    }
    validate_box(box);
    return box;
}

NoSignalingBox load_box_file(const std::string& path) { return box_from_json(read_json_file(path)); }

json vec_to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

json state_to_json(const DensityMatrix& rho) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        json rr = json::array(), ir = json::array();
        for (int c = 0; c < rho.dim(); ++c) {
            rr.push_back(rho.matrix()(r, c).real());
            ir.push_back(rho.matrix()(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    return {{"kind", "matrix"}, {"dimA", rho.dim_a()}, {"dimB", rho.dim_b()}, {"re", re}, {"im", im}};
}

json pauli_to_json(const PauliRepresentation& rep) {
    json t = json::array();
    for (int i = 0; i < 3; ++i)
        t.push_back(json::array({rep.T(i, 0), rep.T(i, 1), rep.T(i, 2)}));
    return {{"kind", "pauli"}, {"a", vec_to_json(rep.a)}, {"b", vec_to_json(rep.b)}, {"T", t}};
}

json box_to_json(const NoSignalingBox& box) {
    json p = json::array();
    for (int x = 0; x < box.nx(); ++x) {
        json px = json::array();
        for (int y = 0; y < box.ny(); ++y) {
            json pxy = json::array();
            for (int a = 0; a < box.na(); ++a) {
                json pxya = json::array();
                for (int b = 0; b < box.nb(); ++b)
                    pxya.push_back(box(x, y, a, b));
                pxy.push_back(pxya);
            }
            px.push_back(pxy);
        }
        p.push_back(px);
    }
    return {{"nx", box.nx()}, {"ny", box.ny()}, {"na", box.na()}, {"nb", box.nb()}, {"p", p}};
}

}  // namespace qcorr

#include "freepot/json_io.hpp"

namespace freepot {

using nlohmann::json;

json to_json(const CMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<double> re(n * n), im(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        re[i] = m.data()[i].real();
        im[i] = m.data()[i].imag();
    }
    return json{{"n", n}, {"re", re}, {"im", im}};
}

json to_json(const MatrixTuple& t) {
    json comps = json::array();
    for (std::size_t i = 0; i < t.arity(); ++i) comps.push_back(to_json(t[i]));
    return json{{"g", t.arity()}, {"components", comps}};
}

CMatrix matrix_from_json(const json& j) {
    const std::size_t n = j.at("n").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != n * n || im.size() != n * n)
        throw std::invalid_argument("matrix json: re/im length must be n^2");
    std::vector<cplx> entries(n * n);
    for (std::size_t i = 0; i < n * n; ++i) entries[i] = {re[i], im[i]};
    CMatrix m(n, std::move(entries));
    if (!m.all_finite()) throw std::invalid_argument("matrix json: non-finite entries");
    return m;
}

MatrixTuple tuple_from_json(const json& j) {
    const std::size_t g = j.at("g").get<std::size_t>();
    const auto& comps = j.at("components");
    if (comps.size() != g)
        throw std::invalid_argument("tuple json: component count must equal g");
    std::vector<CMatrix> out;
    out.reserve(g);
    for (const auto& c : comps) out.push_back(matrix_from_json(c));
    return MatrixTuple(std::move(out));
}

}  // namespace freepot

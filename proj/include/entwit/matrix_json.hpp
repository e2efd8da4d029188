#pragma once

// JSON round-trips for operators, states, and measurement records.
//
// Matrices are stored as {"dims": [d1, d2, ...], "re": [[..]], "im": [[..]]}
// with one row array per matrix row; records as
// {"labels": [..], "values": [..], "sigma": s, "seed": n}.

#include <json.hpp>

#include "hermitian.hpp"
#include "observables.hpp"

namespace entwit {

inline nlohmann::json matrix_to_json(const HermitianMatrix& h) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int i = 0; i < h.side(); ++i) {
        nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (int j = 0; j < h.side(); ++j) {
            rrow.push_back(h.mat()(i, j).real());
            irow.push_back(h.mat()(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return nlohmann::json{{"dims", h.dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline HermitianMatrix matrix_from_json(const nlohmann::json& j) {
    const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    int side = 1;
    for (int d : dims) side *= d;
    if (static_cast<int>(re.size()) != side || static_cast<int>(im.size()) != side)
        throw std::invalid_argument("matrix_from_json: row count does not match dims");
    ComplexMatrix m(side, side);
    for (int i = 0; i < side; ++i) {
        if (static_cast<int>(re.at(i).size()) != side ||
            static_cast<int>(im.at(i).size()) != side)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (int k = 0; k < side; ++k)
            m(i, k) = cplx(re.at(i).at(k).get<double>(), im.at(i).at(k).get<double>());
    }
    return HermitianMatrix(std::move(m), dims);
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
    return matrix_to_json(rho.op());
}

inline DensityMatrix state_from_json(const nlohmann::json& j) {
    const HermitianMatrix h = matrix_from_json(j);
    return DensityMatrix(h.mat(), h.dims());
}

inline nlohmann::json record_to_json(const MeasurementRecord& r) {
    return nlohmann::json{
        {"labels", r.labels}, {"values", r.values}, {"sigma", r.sigma}, {"seed", r.seed}};
}

inline MeasurementRecord record_from_json(const nlohmann::json& j) {
    return MeasurementRecord(j.at("labels").get<std::vector<std::string>>(),
                             j.at("values").get<std::vector<double>>(),
                             j.at("sigma").get<double>(), j.at("seed").get<std::uint64_t>());
}

}  // namespace entwit

#include "homflow/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace homflow::io {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json doc;
    in >> doc;
    return doc;
}

json rat_to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_float()) return parse_rat(std::to_string(j.get<double>()));
    throw std::invalid_argument("expected a rational literal, got: " + j.dump());
}

lie::LieAlgebra lie_algebra_from_json(const json& doc) {
    if (!doc.contains("dim")) throw std::invalid_argument("algebra document missing \"dim\"");
    size_t dim = doc.at("dim").get<size_t>();
    std::vector<std::string> labels;
    if (doc.contains("basis")) labels = doc.at("basis").get<std::vector<std::string>>();
    lie::LieAlgebra::BracketTable table;
    if (doc.contains("brackets")) {
        for (const auto& entry : doc.at("brackets")) {
            long i = entry.at("i").get<long>();
            long j = entry.at("j").get<long>();
            if (i < 0 || j < 0 || static_cast<size_t>(j) >= dim || i >= j)
                throw std::invalid_argument("bracket entry requires 0 <= i < j < dim");
            auto key = std::make_pair(static_cast<size_t>(i), static_cast<size_t>(j));
            if (table.count(key)) throw std::invalid_argument("duplicate bracket entry");
            RatVec coeffs;
            for (const auto& c : entry.at("coeffs")) coeffs.push_back(rat_from_json(c));
            if (coeffs.size() != dim)
                throw std::invalid_argument("bracket coefficient vector has wrong length");
            if (!vec_is_zero(coeffs)) table[key] = std::move(coeffs);
        }
    }
    return lie::LieAlgebra(dim, std::move(labels), std::move(table));
}

lie::LieAlgebra load_lie_algebra(const std::string& path) {
    return lie_algebra_from_json(read_json_file(path));
}

json lie_algebra_to_json(const lie::LieAlgebra& alg) {
    json doc;
    doc["dim"] = alg.dim();
    doc["basis"] = alg.basis_labels();
    json brackets = json::array();
    for (const auto& [key, coeffs] : alg.brackets()) {
        json entry;
        entry["i"] = key.first;
        entry["j"] = key.second;
        json cj = json::array();
        for (const auto& c : coeffs) cj.push_back(rat_to_json(c));
        entry["coeffs"] = cj;
        brackets.push_back(entry);
    }
    doc["brackets"] = brackets;
    return doc;
}

torus::FourierFunction fourier_from_json(const json& doc) {
    torus::FourierFunction f;
    const json& list = doc.is_array() ? doc : doc.at("modes");
    for (const auto& entry : list) {
        std::vector<long> k = entry.at("k").get<std::vector<long>>();
        Rat re = entry.contains("re") ? rat_from_json(entry.at("re")) : Rat(0);
        Rat im = entry.contains("im") ? rat_from_json(entry.at("im")) : Rat(0);
        f.set(std::move(k), CRat(re, im));
    }
    return f;
}

torus::FourierFunction load_fourier(const std::string& path) {
    return fourier_from_json(read_json_file(path));
}

json fourier_to_json(const torus::FourierFunction& f) {
    json list = json::array();
    for (const auto& [k, v] : f.coeffs) {
        json entry;
        entry["k"] = k;
        entry["re"] = rat_to_json(v.re);
        entry["im"] = rat_to_json(v.im);
        list.push_back(entry);
    }
    return list;
}

std::vector<std::array<Rat, 2>> targets_from_json(const json& doc) {
    std::vector<std::array<Rat, 2>> out;
    const json& list = doc.is_array() ? doc : doc.at("targets");
    for (const auto& entry : list) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("each target must be a pair of rationals");
        out.push_back({rat_from_json(entry[0]), rat_from_json(entry[1])});
    }
    return out;
}

std::vector<std::array<Rat, 2>> load_targets(const std::string& path) {
    return targets_from_json(read_json_file(path));
}

}  // namespace homflow::io

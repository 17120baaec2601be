#include "gdd/params_io.hpp"

#include "gdd/error.hpp"
#include "gdd/plan_io.hpp"

namespace gdd::decoder {

using nlohmann::json;

json architecture_to_json(const Architecture& arch) {
    json acts = json::array();
    for (Activation a : arch.activations) acts.push_back(std::string(to_string(a)));
    return {{"widths", arch.widths},
            {"sizes", arch.sizes},
            {"activations", std::move(acts)},
            {"rescale_last", arch.rescale_last}};
}

Architecture architecture_from_json(const json& j) {
    Architecture arch;
    arch.widths = j.at("widths").get<std::vector<int>>();
    arch.sizes = j.at("sizes").get<std::vector<int>>();
    for (const auto& a : j.at("activations")) arch.activations.push_back(parse_activation(a.get<std::string>()));
    arch.rescale_last = j.value("rescale_last", false);
    arch.validate();
    return arch;
}

json params_to_json(const Architecture& arch, const DecoderParams& params, std::uint64_t latent_seed) {
    json doc;
    doc["architecture"] = architecture_to_json(arch);
    doc["seed"] = latent_seed;
    doc["parameter_count"] = parameter_count(arch);
    doc["phis"] = json::array();
    doc["psis"] = json::array();
    for (const auto& m : params.phis) doc["phis"].push_back(coarsen::matrix_to_json(m));
    for (const auto& m : params.psis) doc["psis"].push_back(coarsen::matrix_to_json(m));
    return doc;
}

StoredDecoder params_from_json(const json& doc) {
    try {
        StoredDecoder out;
        out.arch = architecture_from_json(doc.at("architecture"));
        out.latent_seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& m : doc.at("phis")) out.params.phis.push_back(coarsen::matrix_from_json(m));
        for (const auto& m : doc.at("psis")) out.params.psis.push_back(coarsen::matrix_from_json(m));
        const auto layers = static_cast<std::size_t>(out.arch.layers());
        if (out.params.phis.size() != layers || out.params.psis.size() != layers)
            throw DataError("decoder parameters: expected one Phi and one psi per layer");
        for (std::size_t k = 0; k < layers; ++k) {
            const int l = static_cast<int>(k) + 1;
            if (out.params.phis[k].rows() != out.arch.widths[l] ||
                out.params.phis[k].cols() != out.arch.widths[l - 1])
                throw DataError("decoder parameters: Phi shape mismatch at layer " + std::to_string(l));
            const Eigen::Index psi_rows = out.arch.rescaled(l) ? out.arch.widths[l] : 0;
            if (out.params.psis[k].rows() != psi_rows || out.params.psis[k].cols() != 2)
                throw DataError("decoder parameters: psi shape mismatch at layer " + std::to_string(l));
        }
        return out;
    } catch (const json::exception& e) {
        throw DataError(std::string("decoder parameters: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("decoder parameters: ") + e.what());
    }
}

Vector decode(const StoredDecoder& stored, const UpsamplingPlan& plan) {
    const LatentInput latent = make_latent(stored.arch, stored.latent_seed);
    return forward(stored.params, latent.z, plan, stored.arch);
}

}  // namespace gdd::decoder

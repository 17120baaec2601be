#pragma once

#include <filesystem>

#include <json.hpp>

#include "gdd/decoder.hpp"

namespace gdd::decoder {

/// Compressed representation of a fitted signal: the architecture, the
/// latent seed (Z is regenerated from it) and every Phi / psi matrix.
nlohmann::json params_to_json(const Architecture& arch, const DecoderParams& params,
                              std::uint64_t latent_seed);

struct StoredDecoder {
    Architecture arch;
    DecoderParams params;
    std::uint64_t latent_seed = 0;
};

/// Throws gdd::DataError on malformed or inconsistent documents.
StoredDecoder params_from_json(const nlohmann::json& doc);

/// Regenerates the signal encoded by a stored decoder on the given plan.
Vector decode(const StoredDecoder& stored, const UpsamplingPlan& plan);

nlohmann::json architecture_to_json(const Architecture& arch);
Architecture architecture_from_json(const nlohmann::json& j);

}  // namespace gdd::decoder

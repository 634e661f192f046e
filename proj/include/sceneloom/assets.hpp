#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "sceneloom/image.hpp"
#include "sceneloom/mesh.hpp"

namespace sceneloom {

struct AssetRequest {
    std::string name;
    std::string description;
};

/// Source of meshes for Create. Implementations return normalized meshes
/// and throw ProviderUnavailable or GenerationFailed.
class AssetProvider {
public:
    virtual ~AssetProvider() = default;
    virtual TriangleMesh generate_asset(const AssetRequest& request) = 0;
};

/// Source of floor textures for GenerateFloorTexture. Throws
/// ProviderUnavailable or GenerationFailed.
class TextureProvider {
public:
    virtual ~TextureProvider() = default;
    virtual TextureImage generate_texture(const std::string& description, const Aabb& floor_extent) = 0;
};

/// Box/cylinder/cone stack whose layout is drawn from a hash of the
/// description. Same bytes in, same mesh out on every platform.
TriangleMesh procedural_asset(std::string_view description);

/// 64 x 64 two-tone checker tinted by the description hash, 1 m tiles.
TextureImage fallback_texture(std::string_view description);

class ProceduralProvider final : public AssetProvider, public TextureProvider {
public:
    TriangleMesh generate_asset(const AssetRequest& request) override;
    TextureImage generate_texture(const std::string& description, const Aabb& floor_extent) override;
};

/// HTTP client: POST <endpoint>/generate and <endpoint>/texture with
/// {"description": ...}; responses are OBJ text and PNG bytes.
class RemoteProvider final : public AssetProvider, public TextureProvider {
public:
    explicit RemoteProvider(std::string endpoint, std::chrono::seconds timeout = std::chrono::seconds(120));

    TriangleMesh generate_asset(const AssetRequest& request) override;
    TextureImage generate_texture(const std::string& description, const Aabb& floor_extent) override;

private:
    std::string post(const std::string& path, const std::string& description, const char* accept);

    std::string origin_;
    std::string base_path_;
    std::chrono::seconds timeout_;
};

struct ProviderPair {
    std::shared_ptr<AssetProvider> assets;
    std::shared_ptr<TextureProvider> textures;
};

/// "procedural" or "remote" (endpoint from SCENELOOM_ASSET_ENDPOINT, or
/// "remote:<url>"). An empty kind means remote when the variable is set.
/// Throws BadConfig.
ProviderPair make_providers(const std::string& kind);

/// Splits "http://host:port/prefix" into origin and path prefix.
std::pair<std::string, std::string> split_endpoint(const std::string& url);

}  // namespace sceneloom

#include "sceneloom/assets.hpp"

#include <array>
#include <cstdlib>
#include <random>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"

namespace sceneloom {
namespace {

constexpr int kSegments = 16;

// Unit circle at multiples of 22.5 degrees, spelled out so the procedural
// meshes do not depend on the platform's libm.
constexpr std::array<double, 5> kQuarterCos{1.0, 0.92387953251128674, 0.70710678118654757, 0.38268343236508978, 0.0};

std::array<double, 2> ring_point(int k)
{
    k %= kSegments;
    const int q = k / 4, r = k % 4;
    const double c = kQuarterCos[r], s = kQuarterCos[4 - r];
    switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
    }
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // mt19937_64 output is fully specified; the standard distributions are not.
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t next(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

void append(TriangleMesh& dst, const TriangleMesh& src)
{
    const auto base = static_cast<std::uint32_t>(dst.vertices.size());
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
    for (auto t : src.triangles)
        dst.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
}

// Frustum of a cone along +Z; top_scale 0 gives a cone, 1 a cylinder.
TriangleMesh make_frustum(double rx, double ry, double height, double z0, double top_scale)
{
    TriangleMesh m;
    const bool apex = top_scale == 0.0;
    for (int k = 0; k < kSegments; ++k) {
        const auto [c, s] = ring_point(k);
        m.vertices.push_back({rx * c, ry * s, z0});
    }
    if (apex) {
        m.vertices.push_back({0.0, 0.0, z0 + height});
    } else {
        for (int k = 0; k < kSegments; ++k) {
            const auto [c, s] = ring_point(k);
            m.vertices.push_back({rx * top_scale * c, ry * top_scale * s, z0 + height});
        }
    }
    const auto bottom_center = static_cast<std::uint32_t>(m.vertices.size());
    m.vertices.push_back({0.0, 0.0, z0});
    for (std::uint32_t k = 0; k < kSegments; ++k) {
        const std::uint32_t n = (k + 1) % kSegments;
        m.triangles.push_back({bottom_center, n, k});
        if (apex) {
            m.triangles.push_back({k, n, kSegments});
        } else {
            m.triangles.push_back({k, n, kSegments + n});
            m.triangles.push_back({k, kSegments + n, kSegments + k});
        }
    }
    if (!apex) {
        const auto top_center = static_cast<std::uint32_t>(m.vertices.size());
        m.vertices.push_back({0.0, 0.0, z0 + height});
        for (std::uint32_t k = 0; k < kSegments; ++k)
            m.triangles.push_back({top_center, kSegments + k, kSegments + (k + 1) % kSegments});
    }
    return m;
}

}  // namespace

TriangleMesh procedural_asset(std::string_view description)
{
    Rng rng(fnv1a64(description));
    TriangleMesh mesh;
    const int parts = 1 + static_cast<int>(rng.next(3));
    double z = 0.0;
    for (int i = 0; i < parts; ++i) {
        const auto kind = rng.next(3);
        const double wx = rng.uniform(0.3, 1.0);
        const double wy = rng.uniform(0.3, 1.0);
        const double h = rng.uniform(0.1, 0.8);
        switch (kind) {
        case 0: append(mesh, make_box({wx, wy, h}, {0.0, 0.0, z + 0.5 * h})); break;
        case 1: append(mesh, make_frustum(0.5 * wx, 0.5 * wy, h, z, 1.0)); break;
        default: append(mesh, make_frustum(0.5 * wx, 0.5 * wy, h, z, rng.uniform(0.0, 0.6))); break;
        }
        z += h;
    }
    return normalize_mesh(remove_degenerate_triangles(mesh));
}

TextureImage fallback_texture(std::string_view description)
{
    const std::uint64_t h = fnv1a64(description);
    const Rgba light{static_cast<std::uint8_t>(150 + (h & 0x3f)), static_cast<std::uint8_t>(150 + ((h >> 8) & 0x3f)),
                     static_cast<std::uint8_t>(150 + ((h >> 16) & 0x3f)), 255};
    const Rgba dark{static_cast<std::uint8_t>(light.r * 4 / 5), static_cast<std::uint8_t>(light.g * 4 / 5),
                    static_cast<std::uint8_t>(light.b * 4 / 5), 255};
    constexpr int kSize = 64, kCell = 8;
    TextureImage tex{Image(kSize, kSize), 1.0};
    for (int y = 0; y < kSize; ++y)
        for (int x = 0; x < kSize; ++x)
            tex.image.set(x, y, ((x / kCell + y / kCell) & 1) ? dark : light);
    return tex;
}

TriangleMesh ProceduralProvider::generate_asset(const AssetRequest& request)
{
    return procedural_asset(request.description);
}

TextureImage ProceduralProvider::generate_texture(const std::string& description, const Aabb&)
{
    return fallback_texture(description);
}

std::pair<std::string, std::string> split_endpoint(const std::string& url)
{
    const auto scheme = url.find("://");
    const auto start = scheme == std::string::npos ? 0 : scheme + 3;
    const auto slash = url.find('/', start);
    if (slash == std::string::npos)
        return {url, ""};
    std::string path = url.substr(slash);
    while (!path.empty() && path.back() == '/')
        path.pop_back();
    return {url.substr(0, slash), path};
}

RemoteProvider::RemoteProvider(std::string endpoint, std::chrono::seconds timeout) : timeout_(timeout)
{
    std::tie(origin_, base_path_) = split_endpoint(endpoint);
    if (origin_.empty())
        throw Error(ErrorCode::BadConfig, "empty asset endpoint");
}

std::string RemoteProvider::post(const std::string& path, const std::string& description, const char* accept)
{
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const nlohmann::json body{{"description", description}};
    const auto res = client.Post(base_path_ + path, httplib::Headers{{"Accept", accept}}, body.dump(), "application/json");
    if (!res)
        throw Error(ErrorCode::ProviderUnavailable,
                    fmt::format("{}{}: {}", origin_, path, httplib::to_string(res.error())));
    if (res->status >= 500 || res->status == 429)
        throw Error(ErrorCode::ProviderUnavailable, fmt::format("{}{}: HTTP {}", origin_, path, res->status));
    if (res->status != 200)
        throw Error(ErrorCode::GenerationFailed, fmt::format("{}{}: HTTP {}", origin_, path, res->status));
    return res->body;
}

TriangleMesh RemoteProvider::generate_asset(const AssetRequest& request)
{
    const auto body = post("/generate", request.description, "model/obj");
    try {
        return normalize_mesh(remove_degenerate_triangles(parse_obj(body)));
    } catch (const Error& e) {
        throw Error(ErrorCode::GenerationFailed, e.what());
    }
}

TextureImage RemoteProvider::generate_texture(const std::string& description, const Aabb&)
{
    const auto body = post("/texture", description, "image/png");
    try {
        const auto* p = reinterpret_cast<const std::uint8_t*>(body.data());
        return {decode_png({p, body.size()}), 1.0};
    } catch (const Error& e) {
        throw Error(ErrorCode::GenerationFailed, e.what());
    }
}

ProviderPair make_providers(const std::string& kind)
{
    std::string endpoint;
    if (kind.rfind("remote:", 0) == 0) {
        endpoint = kind.substr(7);
    } else if (kind == "remote" || kind.empty()) {
        if (const char* env = std::getenv("SCENELOOM_ASSET_ENDPOINT"); env && *env)
            endpoint = env;
        else if (kind == "remote")
            throw Error(ErrorCode::BadConfig, "--assets remote needs SCENELOOM_ASSET_ENDPOINT");
    } else if (kind != "procedural") {
        throw Error(ErrorCode::BadConfig, fmt::format("unknown asset provider '{}'", kind));
    }
    if (endpoint.empty()) {
        auto p = std::make_shared<ProceduralProvider>();
        return {p, p};
    }
    auto p = std::make_shared<RemoteProvider>(endpoint);
    return {p, p};
}

}  // namespace sceneloom

#include "sceneloom/scene_io.hpp"

#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"

namespace sceneloom {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

ojson triple(const Vec3& v)
{
    return ojson::array({v.x, v.y, v.z});
}

Vec3 read_triple(const nlohmann::json& j, const char* key)
{
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 3)
        throw Error(ErrorCode::BadConfig, fmt::format("scene file: '{}' must be a 3-element array", key));
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

std::string texture_ref(const TextureImage& tex, std::vector<std::uint8_t>* png_out)
{
    auto png = encode_png(tex.image);
    auto ref = "textures/floor_" + sha256_hex(png).substr(0, 16) + ".png";
    if (png_out)
        *png_out = std::move(png);
    return ref;
}

}  // namespace

std::string mesh_ref(const TriangleMesh& mesh)
{
    return "meshes/" + sha256_hex(write_obj(mesh)).substr(0, 16) + ".obj";
}

std::string store_mesh(const TriangleMesh& mesh, const fs::path& dir)
{
    auto ref = mesh_ref(mesh);
    const fs::path path = dir / ref;
    if (!fs::exists(path))
        write_file(path.string(), write_obj(mesh));
    return ref;
}

std::string store_texture(const TextureImage& texture, const fs::path& dir)
{
    std::vector<std::uint8_t> png;
    auto ref = texture_ref(texture, &png);
    const fs::path path = dir / ref;
    if (!fs::exists(path))
        write_file(path.string(), png);
    return ref;
}

std::string scene_document(const Scene& scene)
{
    ojson objects = ojson::array();
    // Duplicates share one mesh pointer; hash it once.
    std::map<const TriangleMesh*, std::string> refs;
    for (const auto& obj : scene.objects()) {
        auto [it, fresh] = refs.try_emplace(obj.mesh.get());
        if (fresh)
            it->second = mesh_ref(*obj.mesh);
        ojson o;
        o["name"] = obj.name;
        o["position"] = triple(obj.pose.position);
        o["rotation_deg"] = triple(obj.pose.rotation_deg);
        o["scale"] = triple(obj.pose.scale);
        o["mesh_ref"] = it->second;
        objects.push_back(std::move(o));
    }
    ojson doc;
    doc["objects"] = std::move(objects);
    if (const auto& tex = scene.floor_texture()) {
        doc["floor_texture_ref"] = texture_ref(*tex, nullptr);
        doc["floor_texture_tile_m"] = tex->tile_size_m;
    } else {
        doc["floor_texture_ref"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

std::string scene_hash(const Scene& scene)
{
    return sha256_hex(scene_document(scene));
}

std::string save_scene(const Scene& scene, const fs::path& dir)
{
    std::map<const TriangleMesh*, bool> seen;
    for (const auto& obj : scene.objects())
        if (seen.try_emplace(obj.mesh.get(), true).second)
            store_mesh(*obj.mesh, dir);
    if (const auto& tex = scene.floor_texture())
        store_texture(*tex, dir);
    auto text = scene_document(scene);
    write_file((dir / "scene.json").string(), text);
    return text;
}

Scene load_scene(const fs::path& scene_json)
{
    const fs::path dir = scene_json.parent_path();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file_text(scene_json.string()));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, fmt::format("{}: {}", scene_json.string(), e.what()));
    }

    Scene scene;
    std::map<std::string, std::shared_ptr<const TriangleMesh>> meshes;
    std::map<std::string, std::shared_ptr<const Bvh>> bvhs;
    try {
        for (const auto& o : doc.at("objects")) {
            const auto ref = o.at("mesh_ref").get<std::string>();
            auto it = meshes.find(ref);
            if (it == meshes.end()) {
                auto mesh = std::make_shared<const TriangleMesh>(read_obj_file((dir / ref).string()));
                it = meshes.emplace(ref, mesh).first;
                bvhs.emplace(ref, std::make_shared<const Bvh>(Bvh::build(*mesh)));
            }
            SceneObject obj;
            obj.name = o.at("name").get<std::string>();
            obj.mesh = it->second;
            obj.bvh = bvhs.at(ref);
            obj.pose.position = read_triple(o, "position");
            obj.pose.rotation_deg = read_triple(o, "rotation_deg");
            obj.pose.scale = read_triple(o, "scale");
            scene.restore_object(std::move(obj));
        }
        const auto& tref = doc.at("floor_texture_ref");
        if (!tref.is_null()) {
            TextureImage tex;
            tex.image = decode_png(read_file_bytes((dir / tref.get<std::string>()).string()));
            tex.tile_size_m = doc.value("floor_texture_tile_m", 1.0);
            scene.set_floor_texture(std::move(tex));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, fmt::format("{}: {}", scene_json.string(), e.what()));
    }
    return scene;
}

}  // namespace sceneloom

#pragma once

#include <filesystem>
#include <string>

#include "sceneloom/scene.hpp"

namespace sceneloom {

/// "meshes/<first 16 hex of sha256(obj text)>.obj"
std::string mesh_ref(const TriangleMesh& mesh);

/// Canonical scene.json text. Numbers keep full round-trip precision; mesh
/// and texture references are content-addressed, so equal scenes give
/// equal bytes.
std::string scene_document(const Scene& scene);

/// SHA-256 of scene_document().
std::string scene_hash(const Scene& scene);

/// Writes dir/scene.json and any missing mesh/texture files it references.
/// Returns the scene.json text.
std::string save_scene(const Scene& scene, const std::filesystem::path& dir);

/// Reads a scene.json written by save_scene; references resolve relative to
/// the file's directory. Throws Io, BadMesh.
Scene load_scene(const std::filesystem::path& scene_json);

/// Writes the mesh under dir/mesh_ref(mesh) unless already present and
/// returns the reference.
std::string store_mesh(const TriangleMesh& mesh, const std::filesystem::path& dir);

/// Same for a texture, stored as textures/floor_<sha16>.png.
std::string store_texture(const TextureImage& texture, const std::filesystem::path& dir);

}  // namespace sceneloom

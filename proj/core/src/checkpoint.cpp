// Copyright 2026 The qbr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbr/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "qbr/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace qbr {

namespace {

constexpr char kMagic[8] = {'Q', 'B', 'R', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}

void write_table(std::ofstream& out, const EmbeddingTable& table) {
  const auto flat = table.flat();
  out.write(reinterpret_cast<const char*>(flat.data()),
            static_cast<std::streamsize>(flat.size() * sizeof(double)));
}

void read_table(std::ifstream& in, EmbeddingTable& table) {
  const auto flat = table.flat();
  in.read(reinterpret_cast<char*>(flat.data()),
          static_cast<std::streamsize>(flat.size() * sizeof(double)));
}

void write_vocab(const std::filesystem::path& path, const Vocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write vocab file: " + path.string());
  for (const auto& name : vocab.names()) out << name << '\n';
}

CheckpointInfo read_header(std::ifstream& in, const std::filesystem::path& path) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ConfigError("not a checkpoint file: " + path.string());
  }
  std::uint32_t version = 0;
  read_pod(in, version);
  if (version != kVersion) {
    throw ConfigError("unsupported checkpoint version " + std::to_string(version) +
                      " in " + path.string());
  }
  std::uint32_t variant_tag = 0;
  read_pod(in, variant_tag);
  if (variant_tag > 2) {
    throw ConfigError("corrupt checkpoint (bad variant tag) in " + path.string());
  }
  CheckpointInfo info;
  info.variant = static_cast<ModelVariant>(variant_tag);
  read_pod(in, info.num_entities);
  read_pod(in, info.num_relations);
  read_pod(in, info.k);
  read_pod(in, info.lambda);
  if (!in) throw ConfigError("truncated checkpoint header: " + path.string());
  return info;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     ModelVariant variant, const TripleStore* vocab) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write checkpoint: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(variant));
  write_pod(out, static_cast<std::uint64_t>(params.num_entities()));
  write_pod(out, static_cast<std::uint64_t>(params.num_relations()));
  write_pod(out, static_cast<std::uint64_t>(params.k()));
  write_pod(out, params.lambda);
  write_table(out, params.entities);
  write_table(out, params.rotations);
  write_table(out, params.distances);
  if (!out) throw ConfigError("failed writing checkpoint: " + path.string());

  if (vocab != nullptr) {
    auto sidecar = [&](const char* suffix) {
      std::filesystem::path p = path;
      p += suffix;
      return p;
    };
    write_vocab(sidecar(".entities.txt"), vocab->entities);
    write_vocab(sidecar(".relations.txt"), vocab->relations);
  }
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint: " + path.string());
  const CheckpointInfo info = read_header(in, path);

  LoadedCheckpoint out;
  out.variant = info.variant;
  out.params.entities = EmbeddingTable(info.num_entities, info.k);
  out.params.rotations = EmbeddingTable(info.num_relations, info.k);
  out.params.distances = EmbeddingTable(info.num_relations, info.k);
  out.params.lambda = info.lambda;
  read_table(in, out.params.entities);
  read_table(in, out.params.rotations);
  read_table(in, out.params.distances);
  if (!in) throw ConfigError("truncated checkpoint: " + path.string());
  return out;
}

CheckpointInfo read_checkpoint_info(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint: " + path.string());
  return read_header(in, path);
}

}  // namespace qbr

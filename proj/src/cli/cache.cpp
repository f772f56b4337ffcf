#include <boost/uuid/name_generator_sha1.hpp>
#include <boost/uuid/uuid_io.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "aszeta/cli.hpp"

namespace aszeta::cli {

Cache::Cache(std::string path) : path_(std::move(path)) {}

std::optional<json> Cache::lookup(const std::string& key) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<json> hit;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error&) {
      continue;  // a torn line from an interrupted writer
    }
    if (entry.value("key", "") == key) hit = entry["record"];
  }
  return hit;
}

void Cache::store(const std::string& key, const json& record) const {
  namespace fs = std::filesystem;
  const fs::path target(path_);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    std::ifstream in(target, std::ios::binary);
    if (in) out << in.rdbuf();
    out << json{{"key", key}, {"record", record}}.dump() << "\n";
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string Cache::key(const std::string& command, const json& spec, const Options& opt) {
  const json request{{"schema_version", kSchemaVersion},
                     {"command", command},
                     {"spec", spec},
                     {"s", opt.s},
                     {"budget", opt.budget}};
  boost::uuids::name_generator_sha1 gen(boost::uuids::ns::oid());
  return boost::uuids::to_string(gen(request.dump()));
}

}  // namespace aszeta::cli

//===-- pipeline.cpp ------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "pipeline.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace optprefix {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

PassPipeline PassPipeline::parse(std::string_view text) {
  PassPipeline pipeline;
  std::unordered_map<std::string, std::size_t> seen;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (start > text.size() && raw.empty())
      break; // no trailing entry after the final newline

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;

    std::size_t space = line.find(' ');
    if (space == std::string_view::npos)
      throw ParseError("pipeline line " + std::to_string(line_no) +
                       ": expected \"<T|A> <pass-name>\", got \"" +
                       std::string(line) + "\"");
    std::string_view tag = line.substr(0, space);
    std::string_view name = trim(line.substr(space + 1));

    PassKind kind;
    if (tag == "T")
      kind = PassKind::Transformation;
    else if (tag == "A")
      kind = PassKind::Analysis;
    else
      throw ParseError("pipeline line " + std::to_string(line_no) +
                       ": unknown kind tag \"" + std::string(tag) +
                       "\" (expected T or A)");
    if (name.empty())
      throw ParseError("pipeline line " + std::to_string(line_no) +
                       ": missing pass name");
    if (has_whitespace(name))
      throw ParseError("pipeline line " + std::to_string(line_no) +
                       ": pass name \"" + std::string(name) +
                       "\" contains whitespace");

    PassEntry entry;
    entry.name = std::string(name);
    entry.kind = kind;
    entry.position = pipeline.entries_.size();
    entry.occurrence = ++seen[entry.name];
    pipeline.entries_.push_back(std::move(entry));
  }
  return pipeline;
}

PassPipeline PassPipeline::load(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("cannot open pipeline file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  PassPipeline pipeline = parse(buf.str());
  pipeline.source_label = file.stem().string();
  return pipeline;
}

PassPipeline PassPipeline::from_passes(
    const std::vector<std::pair<std::string, PassKind>> &passes) {
  PassPipeline pipeline;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto &[name, kind] : passes) {
    PassEntry entry;
    entry.name = name;
    entry.kind = kind;
    entry.position = pipeline.entries_.size();
    entry.occurrence = ++seen[name];
    pipeline.entries_.push_back(std::move(entry));
  }
  return pipeline;
}

std::string PassPipeline::serialize() const {
  std::string out;
  for (const PassEntry &entry : entries_) {
    out += entry.kind == PassKind::Transformation ? "T " : "A ";
    out += entry.name;
    out += '\n';
  }
  return out;
}

std::size_t PassPipeline::transformation_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const PassEntry &e) {
        return e.kind == PassKind::Transformation;
      }));
}

std::string OptConfig::label() const {
  if (index == 0)
    return "-O0 (0)";
  return last_transformation + " (" + std::to_string(total_flags()) + ")";
}

std::vector<OptConfig> generate_configs(const PassPipeline &pipeline) {
  std::vector<OptConfig> configs;
  configs.reserve(pipeline.transformation_count() + 1);

  OptConfig empty;
  configs.push_back(empty);

  std::vector<std::string> prefix;
  prefix.reserve(pipeline.size());
  std::size_t transformations = 0;
  for (const PassEntry &entry : pipeline.entries()) {
    prefix.push_back(entry.name);
    if (entry.kind != PassKind::Transformation)
      continue;
    ++transformations;
    OptConfig config;
    config.index = transformations;
    config.flags = prefix; // copy: the prefix up to and including this entry
    config.last_transformation = entry.name;
    configs.push_back(std::move(config));
  }
  return configs;
}

} // namespace optprefix

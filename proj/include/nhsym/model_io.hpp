#pragma once

#include "nhsym/model.hpp"

#include <string>

namespace nhsym {

// Model specification documents: a JSON key-value tree with top-level keys
// `dimension`, `drift`, `diffusion`, `jumps`, `truncation`, `catalog`.
// parse(serialize(parse(text))) yields an identical model, and serialization
// is canonical (sorted keys, shortest round-trip numbers), so re-serializing
// a serialized model is byte-identical.
ProcessModel parse_model_spec(const std::string& text);
std::string serialize_model_spec(const ProcessModel& model);

// Convenience: parse from a file path (IoError on unreadable files).
ProcessModel load_model_spec(const std::string& path);

}  // namespace nhsym

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "plgen/log.hpp"
#include "plgen/model.hpp"

namespace plgen {

// Native model document (.plgen.json). Hooks loaded from files are written back
// as their path; inline hooks keep their source.
std::string export_native(const ProcessModel& model);
/// `base_dir` resolves relative hook paths. Throws ParseError (line number for
/// malformed JSON, JSON pointer for schema problems) or Error naming a missing hook file.
ProcessModel import_native(std::string_view document, const std::filesystem::path& base_dir = ".");

/// Place/transition net. Throws InvalidModelError for models that do not validate.
std::string export_pnml(const ProcessModel& model);
/// Reads a workflow net back into a model: visible transitions become activities,
/// invisible ones and places become gateways. Throws ParseError.
ProcessModel import_pnml(std::string_view document);

std::string export_dot(const ProcessModel& model);

std::string export_xes(const EventLog& log);

/// Model file by extension: .pnml is PNML, anything else is the native format.
ProcessModel read_model_file(const std::filesystem::path& path);
/// Native, .pnml or .dot by extension.
void write_model_file(const ProcessModel& model, const std::filesystem::path& path);
/// XES, gzip-compressed when the path ends in .gz.
void write_xes_file(const EventLog& log, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// ISO-8601 UTC with milliseconds, e.g. 2024-01-01T00:00:00.000+00:00.
std::string format_timestamp(std::int64_t ms);

}  // namespace plgen

#pragma once

namespace argconc {

inline constexpr const char* kToolName = "argconc";
inline constexpr const char* kToolVersion = "0.1.0";
// Version of the JSONL record, report and manifest formats.
inline constexpr const char* kFormatSchemaVersion = "1";

}  // namespace argconc

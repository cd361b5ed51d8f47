#pragma once

namespace symcert {

inline constexpr const char* kToolName = "symcert";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kInstanceSchema = "symcert-instance/1";
inline constexpr const char* kReportSchema = "symcert-report/1";

}  // namespace symcert

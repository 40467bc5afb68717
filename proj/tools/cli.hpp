#pragma once

namespace heic::cli {

/// Exit codes: 0 success, 1 usage or validation error, 2 numerical failure.
int cli_main(int argc, const char* const* argv);

}  // namespace heic::cli

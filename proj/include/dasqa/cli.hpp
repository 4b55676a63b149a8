#pragma once

namespace dasqa {

/// `dasqa --file-path <qasm> --config-file-path <yaml> [--out-dir <dir>]
/// [--baseline <coupling.json>] [--verbose]`
int cli_main(int argc, char** argv);

} // namespace dasqa

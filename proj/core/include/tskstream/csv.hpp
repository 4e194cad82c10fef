#ifndef TSKSTREAM_CSV_HPP
#define TSKSTREAM_CSV_HPP

#include <memory>
#include <string>

#include "tskstream/stream.hpp"

namespace tsk {

/// Open an RFC-4180-style CSV with a header row as a lazy stream.
/// All columns must be numeric; the target column is selected by name,
/// or defaults to the last column when targetColumn is empty.
/// Throws DataError (with line numbers) on malformed content.
std::unique_ptr<StreamSource> openCsv(const std::string& path,
                                      const std::string& targetColumn = "");

/// Write instances to CSV (used by the synthetic generators).
void writeCsv(const std::string& path, StreamSource& source);

} // namespace tsk

#endif

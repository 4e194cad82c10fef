#ifndef TSKSTREAM_ARFF_HPP
#define TSKSTREAM_ARFF_HPP

#include <memory>
#include <string>

#include "tskstream/stream.hpp"

namespace tsk {

/// Open a dense numeric ARFF file as a lazy stream. Only numeric/real/
/// integer attributes are supported; a nominal, string or date attribute
/// raises a DataError naming it, and sparse data rows are rejected.
/// The target defaults to the last attribute unless overridden by name.
std::unique_ptr<StreamSource> openArff(const std::string& path,
                                       const std::string& targetColumn = "");

/// Write instances as a dense numeric ARFF file.
void writeArff(const std::string& path, const std::string& relation, StreamSource& source);

} // namespace tsk

#endif

#ifndef TSKSTREAM_STREAM_HPP
#define TSKSTREAM_STREAM_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsk {

/// One labeled observation.
struct Instance {
    std::vector<double> x;
    double y = 0.0;
};

/// Raised on malformed or unsupported input data; carries the 1-based
/// line number when one is known.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Single-consumer lazy source of (x, y) rows.
class StreamSource {
public:
    virtual ~StreamSource() = default;

    virtual const std::vector<std::string>& featureNames() const = 0;
    virtual const std::string& targetName() const = 0;
    std::size_t dimension() const { return featureNames().size(); }

    /// Next row, or nullopt at end of stream. Throws DataError on bad rows.
    virtual std::optional<Instance> next() = 0;
};

/// In-memory source, mainly for tests and replays.
class VectorSource final : public StreamSource {
public:
    VectorSource(std::vector<Instance> rows, std::vector<std::string> featureNames,
                 std::string targetName = "y")
        : rows_(std::move(rows)),
          features_(std::move(featureNames)),
          target_(std::move(targetName)) {}

    const std::vector<std::string>& featureNames() const override { return features_; }
    const std::string& targetName() const override { return target_; }

    std::optional<Instance> next() override {
        if (pos_ >= rows_.size()) return std::nullopt;
        return rows_[pos_++];
    }

private:
    std::vector<Instance> rows_;
    std::vector<std::string> features_;
    std::string target_;
    std::size_t pos_ = 0;
};

} // namespace tsk

#endif

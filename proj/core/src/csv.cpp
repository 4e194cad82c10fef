#include "tskstream/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace tsk {

namespace {

// Minimal RFC-4180 field splitting: quoted fields may contain commas and
// doubled quotes. No multi-line fields (rows are numeric).
std::vector<std::string> splitCsvLine(const std::string& line, std::size_t lineNo) {
    std::vector<std::string> fields;
    std::string cur;
    bool inQuotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (inQuotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            inQuotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (inQuotes) throw DataError("unterminated quoted field", lineNo);
    fields.push_back(std::move(cur));
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parseNumber(const std::string& field, std::size_t lineNo) {
    const std::string t = trimmed(field);
    if (t.empty()) throw DataError("empty cell where a number was expected", lineNo);
    if (t == "?") throw DataError("missing value '?' not supported", lineNo);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (errno != 0 || end != t.c_str() + t.size())
        throw DataError("non-numeric cell '" + t + "'", lineNo);
    return v;
}

class CsvSource final : public StreamSource {
public:
    CsvSource(const std::string& path, const std::string& targetColumn) : in_(path) {
        if (!in_) throw DataError("cannot open file: " + path);

        std::string header;
        if (!std::getline(in_, header)) throw DataError("missing header row", 1);
        ++lineNo_;
        auto cols = splitCsvLine(header, 1);
        for (auto& c : cols) c = trimmed(c);
        if (cols.empty()) throw DataError("empty header row", 1);

        if (targetColumn.empty()) {
            targetIdx_ = cols.size() - 1;
        } else {
            targetIdx_ = cols.size();
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == targetColumn) {
                    targetIdx_ = i;
                    break;
                }
            }
            if (targetIdx_ == cols.size())
                throw DataError("target column '" + targetColumn + "' not in header");
        }
        target_ = cols[targetIdx_];
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (i != targetIdx_) features_.push_back(cols[i]);
        columns_ = cols.size();
    }

    const std::vector<std::string>& featureNames() const override { return features_; }
    const std::string& targetName() const override { return target_; }

    std::optional<Instance> next() override {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineNo_;
            if (line.empty() || line == "\r") continue;
            const auto fields = splitCsvLine(line, lineNo_);
            if (fields.size() != columns_)
                throw DataError("expected " + std::to_string(columns_) + " fields, got " +
                                    std::to_string(fields.size()),
                                lineNo_);
            Instance inst;
            inst.x.reserve(columns_ - 1);
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const double v = parseNumber(fields[i], lineNo_);
                if (i == targetIdx_)
                    inst.y = v;
                else
                    inst.x.push_back(v);
            }
            return inst;
        }
        return std::nullopt;
    }

private:
    std::ifstream in_;
    std::vector<std::string> features_;
    std::string target_;
    std::size_t targetIdx_ = 0;
    std::size_t columns_ = 0;
    std::size_t lineNo_ = 0;
};

} // namespace

std::unique_ptr<StreamSource> openCsv(const std::string& path, const std::string& targetColumn) {
    return std::make_unique<CsvSource>(path, targetColumn);
}

void writeCsv(const std::string& path, StreamSource& source) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    for (const auto& f : source.featureNames()) out << f << ',';
    out << source.targetName() << '\n';

    char buf[64];
    while (auto inst = source.next()) {
        for (double v : inst->x) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof(buf), "%.17g", inst->y);
        out << buf << '\n';
    }
}

} // namespace tsk

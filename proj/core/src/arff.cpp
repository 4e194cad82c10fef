#include "tskstream/arff.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace tsk {

namespace {

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

// Attribute names may be quoted with ' or ".
std::string stripQuotes(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"')))
        return s.substr(1, s.size() - 2);
    return s;
}

double parseNumber(const std::string& field, std::size_t lineNo) {
    const std::string t = trimmed(field);
    if (t.empty()) throw DataError("empty value in data row", lineNo);
    if (t == "?") throw DataError("missing value '?' not supported", lineNo);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (errno != 0 || end != t.c_str() + t.size())
        throw DataError("non-numeric value '" + t + "'", lineNo);
    return v;
}

class ArffSource final : public StreamSource {
public:
    ArffSource(const std::string& path, const std::string& targetColumn) : in_(path) {
        if (!in_) throw DataError("cannot open file: " + path);
        parseHeader(targetColumn);
    }

    const std::vector<std::string>& featureNames() const override { return features_; }
    const std::string& targetName() const override { return target_; }

    std::optional<Instance> next() override {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineNo_;
            const std::string t = trimmed(line);
            if (t.empty() || t[0] == '%') continue;
            if (t[0] == '{')
                throw DataError("sparse ARFF rows are not supported", lineNo_);

            Instance inst;
            inst.x.reserve(attributes_.size() - 1);
            std::size_t start = 0;
            std::size_t attr = 0;
            while (attr < attributes_.size()) {
                std::size_t comma = t.find(',', start);
                const std::string field =
                    comma == std::string::npos ? t.substr(start) : t.substr(start, comma - start);
                const double v = parseNumber(field, lineNo_);
                if (attr == targetIdx_)
                    inst.y = v;
                else
                    inst.x.push_back(v);
                ++attr;
                if (comma == std::string::npos) {
                    if (attr != attributes_.size())
                        throw DataError("expected " + std::to_string(attributes_.size()) +
                                            " values, got " + std::to_string(attr),
                                        lineNo_);
                    break;
                }
                start = comma + 1;
            }
            if (attr == attributes_.size() && t.find(',', start) != std::string::npos)
                throw DataError("too many values in data row", lineNo_);
            return inst;
        }
        return std::nullopt;
    }

private:
    void parseHeader(const std::string& targetColumn) {
        std::string line;
        bool inData = false;
        while (!inData && std::getline(in_, line)) {
            ++lineNo_;
            const std::string t = trimmed(line);
            if (t.empty() || t[0] == '%') continue;
            const std::string low = lowered(t);
            if (low.rfind("@relation", 0) == 0) continue;
            if (low.rfind("@attribute", 0) == 0) {
                // @attribute <name> <type>
                std::size_t p = t.find_first_of(" \t");
                std::size_t nameBegin = t.find_first_not_of(" \t", p);
                if (nameBegin == std::string::npos)
                    throw DataError("malformed @attribute line", lineNo_);
                std::size_t nameEnd;
                if (t[nameBegin] == '\'' || t[nameBegin] == '"') {
                    nameEnd = t.find(t[nameBegin], nameBegin + 1);
                    if (nameEnd == std::string::npos)
                        throw DataError("unterminated quoted attribute name", lineNo_);
                    ++nameEnd;
                } else {
                    nameEnd = t.find_first_of(" \t", nameBegin);
                    if (nameEnd == std::string::npos)
                        throw DataError("attribute without a type", lineNo_);
                }
                const std::string name = stripQuotes(t.substr(nameBegin, nameEnd - nameBegin));
                const std::string type = lowered(trimmed(t.substr(nameEnd)));
                if (type != "numeric" && type != "real" && type != "integer")
                    throw DataError("unsupported attribute '" + name + "' of type '" + type +
                                        "' (numeric attributes only)",
                                    lineNo_);
                attributes_.push_back(name);
                continue;
            }
            if (low.rfind("@data", 0) == 0) {
                inData = true;
                continue;
            }
            throw DataError("unexpected header line: " + t, lineNo_);
        }
        if (!inData) throw DataError("no @data section found");
        if (attributes_.size() < 2)
            throw DataError("need at least one feature and one target attribute");

        if (targetColumn.empty()) {
            targetIdx_ = attributes_.size() - 1;
        } else {
            targetIdx_ = attributes_.size();
            for (std::size_t i = 0; i < attributes_.size(); ++i) {
                if (attributes_[i] == targetColumn) {
                    targetIdx_ = i;
                    break;
                }
            }
            if (targetIdx_ == attributes_.size())
                throw DataError("target attribute '" + targetColumn + "' not declared");
        }
        target_ = attributes_[targetIdx_];
        for (std::size_t i = 0; i < attributes_.size(); ++i)
            if (i != targetIdx_) features_.push_back(attributes_[i]);
    }

    std::ifstream in_;
    std::vector<std::string> attributes_;
    std::vector<std::string> features_;
    std::string target_;
    std::size_t targetIdx_ = 0;
    std::size_t lineNo_ = 0;
};

} // namespace

std::unique_ptr<StreamSource> openArff(const std::string& path, const std::string& targetColumn) {
    return std::make_unique<ArffSource>(path, targetColumn);
}

void writeArff(const std::string& path, const std::string& relation, StreamSource& source) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out << "@relation " << relation << '\n';
    for (const auto& f : source.featureNames()) out << "@attribute " << f << " numeric\n";
    out << "@attribute " << source.targetName() << " numeric\n";
    out << "@data\n";

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

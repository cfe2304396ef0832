#include "tdn/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>
#include <zlib.h>

namespace tdn {

namespace {

class GzInputBuf : public std::streambuf {
public:
    explicit GzInputBuf(const std::filesystem::path& path) {
        file_ = gzopen(path.c_str(), "rb");
        if (file_ == nullptr) {
            throw Error("cannot open '" + path.string() + "'");
        }
        gzbuffer(file_, kChunk);
    }

    GzInputBuf(const GzInputBuf&) = delete;
    GzInputBuf& operator=(const GzInputBuf&) = delete;

    ~GzInputBuf() override {
        if (file_ != nullptr) gzclose(file_);
    }

protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        const int n = gzread(file_, buf_, kChunk);
        if (n < 0) {
            int errnum = Z_OK;
            const char* msg = gzerror(file_, &errnum);
            throw Error(std::string("gzip read failed: ") + (msg != nullptr ? msg : ""));
        }
        if (n == 0) return traits_type::eof();
        setg(buf_, buf_, buf_ + n);
        return traits_type::to_int_type(*gptr());
    }

private:
    static constexpr int kChunk = 1 << 16;
    gzFile file_ = nullptr;
    char buf_[kChunk];
};

class GzInputStream : public std::istream {
public:
    explicit GzInputStream(const std::filesystem::path& path)
        : std::istream(nullptr), buf_(path) {
        rdbuf(&buf_);
    }

private:
    GzInputBuf buf_;
};

// Walks the dot path through nested objects. Returns the canonical id, or
// an empty string plus a reason when the record is unusable.
std::string extract_id(const nlohmann::json& record, const std::vector<std::string>& path,
                       std::string* reason) {
    const nlohmann::json* node = &record;
    for (const auto& key : path) {
        if (!node->is_object()) {
            *reason = "expected an object at '" + key + "'";
            return {};
        }
        const auto it = node->find(key);
        if (it == node->end()) {
            *reason = "missing field '" + key + "'";
            return {};
        }
        node = &*it;
    }
    if (node->is_string()) {
        auto id = node->get<std::string>();
        if (id.empty()) {
            *reason = "empty id string";
            return {};
        }
        return id;
    }
    if (node->is_number_unsigned()) {
        return std::to_string(node->get<std::uint64_t>());
    }
    if (node->is_number_integer()) {
        return std::to_string(node->get<std::int64_t>());
    }
    *reason = "id is neither a string nor an integer";
    return {};
}

std::vector<std::string> split_path(const std::string& dotted) {
    std::vector<std::string> out;
    std::string seg;
    for (char c : dotted) {
        if (c == '.') {
            out.push_back(seg);
            seg.clear();
        } else {
            seg.push_back(c);
        }
    }
    out.push_back(seg);
    for (const auto& s : out) {
        if (s.empty()) throw Error("bad id path '" + dotted + "'");
    }
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

void write_csv(const FrequencyTable& table, std::ostream& out) {
    std::vector<std::pair<std::string_view, std::uint64_t>> rows;
    rows.reserve(table.richness());
    for (const auto& [id, count] : table.counts()) {
        if (id.find('\n') != std::string::npos || id.find('\r') != std::string::npos) {
            throw Error("contributor id contains a line break");
        }
        rows.emplace_back(id, count);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    out << "contributor_id,count\n";
    for (const auto& [id, count] : rows) {
        out << id << ',' << count << '\n';
    }
}

}  // namespace

IngestReport ingest_stream(std::istream& in, const IngestConfig& config) {
    const std::vector<std::string> path = split_path(config.id_path);

    IngestReport report;
    CountMap counts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        ++report.records_read;

        std::string reason;
        std::string id;
        const auto record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded()) {
            reason = "not valid JSON";
        } else {
            id = extract_id(record, path, &reason);
        }

        if (id.empty()) {
            if (config.on_malformed == OnMalformed::abort) {
                throw MalformedRecordError(
                    "line " + std::to_string(line_no) + ": " + reason, line_no);
            }
            ++report.records_skipped;
            continue;
        }
        ++counts[id];
        ++report.records_counted;
    }
    if (in.bad()) throw Error("stream error while ingesting");

    report.table = FrequencyTable::from_map(std::move(counts));
    return report;
}

IngestReport ingest_file(const std::filesystem::path& path, const IngestConfig& config) {
    const auto in = open_input(path);
    return ingest_stream(*in, config);
}

std::unique_ptr<std::istream> open_input(const std::filesystem::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw Error("cannot open '" + path.string() + "'");
    unsigned char magic[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(magic), 2);
    const bool gzipped = probe.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
    probe.close();

    if (gzipped) return std::make_unique<GzInputStream>(path);
    return std::make_unique<std::ifstream>(path, std::ios::binary);
}

void save_table(const FrequencyTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_csv(table, out);
    out.flush();
    if (!out) throw Error("failed while writing '" + path.string() + "'");
}

std::string table_to_csv(const FrequencyTable& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

FrequencyTable table_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("missing header row", 1);
    }
    strip_cr(line);
    if (line != "contributor_id,count") {
        throw ParseError("bad header '" + line + "'", 1);
    }

    CountMap counts;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        strip_cr(line);
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw ParseError("empty row", row);
        }
        const auto comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 == line.size()) {
            throw ParseError("expected '<id>,<count>'", row);
        }
        std::string id = line.substr(0, comma);
        const std::string digits = line.substr(comma + 1);
        if (digits.size() > 20 ||
            !std::all_of(digits.begin(), digits.end(),
                         [](unsigned char c) { return c >= '0' && c <= '9'; })) {
            throw ParseError("bad count '" + digits + "'", row);
        }
        std::uint64_t count = 0;
        try {
            count = std::stoull(digits);
        } catch (const std::exception&) {
            throw ParseError("bad count '" + digits + "'", row);
        }
        if (count == 0) {
            throw InvalidCountError("row " + std::to_string(row) +
                                    ": count must be >= 1");
        }
        if (!counts.emplace(std::move(id), count).second) {
            throw DuplicateIdError("row " + std::to_string(row) +
                                   ": duplicate contributor id");
        }
    }
    if (in.bad()) throw Error("stream error while reading table");
    if (counts.empty()) throw EmptyTableError("table file has no data rows");
    return FrequencyTable::from_map(std::move(counts));
}

FrequencyTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return table_from_csv(in);
}

}  // namespace tdn

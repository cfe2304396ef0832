#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>

#include "tdn/freqtable.hpp"

namespace tdn {

/// What to do with a line that yields no usable contributor id.
enum class OnMalformed { skip_and_count, abort };

struct IngestConfig {
    /// Dot-separated path to the id inside each record, e.g. "user.id_str".
    /// The value there must be a non-empty string or an integer; integers
    /// are canonicalized to their decimal string form.
    std::string id_path;
    OnMalformed on_malformed = OnMalformed::skip_and_count;
};

struct IngestReport {
    std::uint64_t records_read = 0;     // counted + skipped
    std::uint64_t records_counted = 0;
    std::uint64_t records_skipped = 0;
    FrequencyTable table;
};

/// Count contributors over a stream of newline-delimited JSON records.
/// Memory stays proportional to the number of distinct contributors, not
/// the number of lines. In abort mode the first bad line raises
/// MalformedRecordError carrying its 1-based line number.
IngestReport ingest_stream(std::istream& in, const IngestConfig& config);

/// ingest_stream over a file, decompressing gzip input transparently.
IngestReport ingest_file(const std::filesystem::path& path, const IngestConfig& config);

/// Open a file for reading, sniffing the gzip magic bytes (0x1f 0x8b) and
/// inflating on the fly when present.
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

/// Canonical flat form: header "contributor_id,count", one row per
/// contributor, sorted by count descending then id ascending, LF endings.
/// Identical tables serialize to identical bytes.
void save_table(const FrequencyTable& table, const std::filesystem::path& path);
std::string table_to_csv(const FrequencyTable& table);

/// Read the flat form back. Rows may arrive in any order; duplicate ids,
/// zero counts, a bad header, or unparseable rows are rejected with the
/// offending 1-based row number (the header is row 1).
FrequencyTable load_table(const std::filesystem::path& path);
FrequencyTable table_from_csv(std::istream& in);

}  // namespace tdn

#include "gplus/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gplus/errors.hpp"

namespace gplus {

namespace {

std::string where(const std::filesystem::path& file, std::size_t line) {
    return " (" + file.string() + ":" + std::to_string(line) + ")";
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Tab-separated UTF-8 file with a mandatory header row. Completely empty
// lines are skipped; a trailing '\r' per line is tolerated.
class TsvFile {
public:
    explicit TsvFile(const std::filesystem::path& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot open file " + path.string());
        std::string line;
        std::size_t line_no = 0;
        bool have_header = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::size_t start = 0;
            while (true) {
                std::size_t tab = line.find('\t', start);
                if (tab == std::string::npos) {
                    fields.push_back(line.substr(start));
                    break;
                }
                fields.push_back(line.substr(start, tab - start));
                start = tab + 1;
            }
            if (!have_header) {
                header_ = std::move(fields);
                have_header = true;
            } else {
                rows_.push_back({line_no, std::move(fields)});
            }
        }
        if (!have_header) throw ParseError("missing header row" + where(path_, 1));
    }

    struct Row {
        std::size_t line_no;
        std::vector<std::string> fields;
    };

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == name) return i;
        }
        throw ParseError("missing required column '" + std::string(name) + "'" + where(path_, 1));
    }

    const std::string& field(const Row& row, std::size_t col) const {
        if (col >= row.fields.size()) {
            throw ParseError("row has " + std::to_string(row.fields.size()) + " fields, need " +
                             std::to_string(col + 1) + where(path_, row.line_no));
        }
        return row.fields[col];
    }

    const std::vector<Row>& rows() const { return rows_; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

double parse_number(const TsvFile& file, const TsvFile::Row& row, const std::string& text,
                    std::string_view what, double min, double max) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("bad " + std::string(what) + " '" + text + "'" +
                         where(file.path(), row.line_no));
    }
    if (value < min || value > max) {
        throw ParseError(std::string(what) + " " + text + " out of range [" +
                         std::to_string(min) + ", " + std::to_string(max) + "]" +
                         where(file.path(), row.line_no));
    }
    return value;
}

std::int64_t parse_task_id(const TsvFile& file, const TsvFile::Row& row, const std::string& text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
        throw ParseError("bad task_id '" + text + "'" + where(file.path(), row.line_no));
    }
    return value;
}

bool valid_soc_code(std::string_view s) {
    if (s.size() != 10 || s[2] != '-' || s[7] != '.') return false;
    for (std::size_t i : {0u, 1u, 3u, 4u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

PrimitiveKind parse_kind(const TsvFile& file, const TsvFile::Row& row, const std::string& text) {
    const std::string k = lowercase(text);
    if (k == "skill" || k == "skills") return PrimitiveKind::Skill;
    if (k == "ability" || k == "abilities") return PrimitiveKind::Ability;
    if (k == "knowledge") return PrimitiveKind::Knowledge;
    throw ParseError("bad primitive kind '" + text + "'" + where(file.path(), row.line_no));
}

ContentModelLabel parse_label(const TsvFile& file, const TsvFile::Row& row,
                              const std::string& text) {
    try {
        return parse_content_model_label(text);
    } catch (const MalformedLabel& e) {
        throw ParseError(e.message() + where(file.path(), row.line_no));
    }
}

std::vector<WorkPrimitive> load_primitives(const std::filesystem::path& path,
                                           std::vector<std::string>& warnings) {
    TsvFile file(path);
    const std::size_t col_id = file.column("element_id");
    const std::size_t col_kind = file.column("kind");
    const std::size_t col_name = file.column("name");

    std::vector<WorkPrimitive> in_file_order;
    std::unordered_set<std::string> seen;
    for (const auto& row : file.rows()) {
        WorkPrimitive p;
        p.element_id = file.field(row, col_id);
        parse_label(file, row, p.element_id);  // shape check only
        p.kind = parse_kind(file, row, file.field(row, col_kind));
        p.name = file.field(row, col_name);
        if (!seen.insert(p.element_id).second) {
            throw IntegrityError("duplicate primitive element_id " + p.element_id +
                                 where(file.path(), row.line_no));
        }
        in_file_order.push_back(std::move(p));
    }
    if (in_file_order.empty()) throw ParseError("no primitives defined" + where(path, 1));

    // Canonical ordering: skills, then abilities, then knowledge, keeping
    // file order within each kind.
    std::vector<WorkPrimitive> canonical;
    canonical.reserve(in_file_order.size());
    for (PrimitiveKind kind :
         {PrimitiveKind::Skill, PrimitiveKind::Ability, PrimitiveKind::Knowledge}) {
        for (const auto& p : in_file_order) {
            if (p.kind == kind) canonical.push_back(p);
        }
    }
    for (std::size_t i = 0; i < canonical.size(); ++i) canonical[i].index = i;

    const auto count = [&](PrimitiveKind k) {
        return std::count_if(canonical.begin(), canonical.end(),
                             [k](const WorkPrimitive& p) { return p.kind == k; });
    };
    const auto skills = count(PrimitiveKind::Skill);
    const auto abilities = count(PrimitiveKind::Ability);
    const auto knowledge = count(PrimitiveKind::Knowledge);
    if (skills != 33 || abilities != 52 || knowledge != 35) {
        std::ostringstream msg;
        msg << "primitive counts differ from the canonical 33/52/35: found " << skills
            << " skills, " << abilities << " abilities, " << knowledge << " knowledge";
        warnings.push_back(msg.str());
    }
    return canonical;
}

}  // namespace

DatasetPaths DatasetPaths::in_dir(const std::filesystem::path& dir) {
    DatasetPaths p;
    p.primitives = dir / "primitives.tsv";
    p.occupations = dir / "occupations.tsv";
    p.ratings = dir / "ratings.tsv";
    p.tasks = dir / "tasks.tsv";
    p.task_dwa = dir / "task_dwa.tsv";
    p.activities = dir / "activities.tsv";
    return p;
}

Dataset load_dataset(const DatasetPaths& paths, const GPlusConfig& config) {
    config.validate();
    Dataset::Data data;

    data.primitives = load_primitives(paths.primitives, data.warnings);
    const std::size_t dim = data.primitives.size();
    std::unordered_map<std::string, std::size_t> index_of;
    for (const auto& p : data.primitives) index_of.emplace(p.element_id, p.index);

    // Occupations.
    {
        TsvFile file(paths.occupations);
        const std::size_t col_soc = file.column("soc_code");
        const std::size_t col_title = file.column("title");
        for (const auto& row : file.rows()) {
            Occupation occ;
            occ.soc_code = file.field(row, col_soc);
            if (!valid_soc_code(occ.soc_code)) {
                throw ParseError("bad soc_code '" + occ.soc_code + "'" +
                                 where(file.path(), row.line_no));
            }
            occ.title = file.field(row, col_title);
            if (data.occupations.count(occ.soc_code)) {
                throw IntegrityError("duplicate soc_code " + occ.soc_code +
                                     where(file.path(), row.line_no));
            }
            data.occupations.emplace(occ.soc_code, std::move(occ));
        }
    }

    // Ratings: one level per (occupation, primitive); assembled into
    // full-dimension occupation fingerprints.
    {
        TsvFile file(paths.ratings);
        const std::size_t col_soc = file.column("soc_code");
        const std::size_t col_elem = file.column("element_id");
        const std::size_t col_level = file.column("level");
        struct Acc {
            std::vector<double> levels;
            std::vector<char> seen;
        };
        std::unordered_map<std::string, Acc> acc;
        for (const auto& row : file.rows()) {
            const std::string& soc = file.field(row, col_soc);
            if (!data.occupations.count(soc)) {
                throw IntegrityError("unknown soc code " + soc + where(file.path(), row.line_no));
            }
            const std::string& elem = file.field(row, col_elem);
            auto it = index_of.find(elem);
            if (it == index_of.end()) {
                throw IntegrityError("unknown primitive element_id " + elem +
                                     where(file.path(), row.line_no));
            }
            const double level =
                parse_number(file, row, file.field(row, col_level), "level", 0.0, kMaxLevel);
            auto& a = acc[soc];
            if (a.levels.empty()) {
                a.levels.assign(dim, 0.0);
                a.seen.assign(dim, 0);
            }
            if (a.seen[it->second]) {
                throw IntegrityError("duplicate rating for (" + soc + ", " + elem + ")" +
                                     where(file.path(), row.line_no));
            }
            a.levels[it->second] = level;
            a.seen[it->second] = 1;
        }
        for (auto& [soc, occ] : data.occupations) {
            auto it = acc.find(soc);
            if (it == acc.end()) {
                throw DimensionError("occupation " + soc + " has no ratings; fingerprint missing " +
                                     std::to_string(dim) + " levels");
            }
            for (std::size_t d = 0; d < dim; ++d) {
                if (!it->second.seen[d]) {
                    throw DimensionError("occupation " + soc + " fingerprint missing level for " +
                                         data.primitives[d].element_id);
                }
            }
            occ.fingerprint = Fingerprint(std::move(it->second.levels));
        }
    }

    // Work activity hierarchy.
    {
        TsvFile file(paths.activities);
        const std::size_t col_label = file.column("label");
        const std::size_t col_title = file.column("title");
        for (const auto& row : file.rows()) {
            WorkActivity activity;
            activity.label = parse_label(file, row, file.field(row, col_label));
            activity.title = file.field(row, col_title);
            activity.level = activity.label.level;
            if (data.activities.count(activity.label.raw)) {
                throw IntegrityError("duplicate work activity label " + activity.label.raw +
                                     where(file.path(), row.line_no));
            }
            data.activities.emplace(activity.label.raw, std::move(activity));
        }
        for (auto& [raw, activity] : data.activities) {
            auto parent = activity.label.parent();
            if (parent && data.activities.count(parent->raw)) {
                activity.parent_label = std::move(parent);
            }
        }
    }

    // Task statements.
    {
        TsvFile file(paths.tasks);
        const std::size_t col_id = file.column("task_id");
        const std::size_t col_soc = file.column("soc_code");
        const std::size_t col_imp = file.column("importance");
        const std::size_t col_cat = file.column("category");
        const std::size_t col_text = file.column("text");
        for (const auto& row : file.rows()) {
            TaskStatement task;
            task.task_id = parse_task_id(file, row, file.field(row, col_id));
            task.occupation_code = file.field(row, col_soc);
            auto occ = data.occupations.find(task.occupation_code);
            if (occ == data.occupations.end()) {
                throw IntegrityError("unknown soc code " + task.occupation_code +
                                     where(file.path(), row.line_no));
            }
            task.importance =
                parse_number(file, row, file.field(row, col_imp), "importance", 0.0, 100.0);
            const std::string cat = lowercase(file.field(row, col_cat));
            if (cat == "core") {
                task.category = TaskCategory::Core;
            } else if (cat == "supplemental") {
                task.category = TaskCategory::Supplemental;
            } else {
                throw ParseError("bad category '" + file.field(row, col_cat) + "'" +
                                 where(file.path(), row.line_no));
            }
            task.text = file.field(row, col_text);
            if (data.tasks.count(task.task_id)) {
                throw IntegrityError("duplicate task_id " + std::to_string(task.task_id) +
                                     where(file.path(), row.line_no));
            }
            occ->second.task_ids.push_back(task.task_id);
            data.tasks.emplace(task.task_id, std::move(task));
        }
        for (auto& [soc, occ] : data.occupations) {
            std::sort(occ.task_ids.begin(), occ.task_ids.end());
        }
    }

    // Task-to-DWA map plus the derived reverse map.
    {
        TsvFile file(paths.task_dwa);
        const std::size_t col_task = file.column("task_id");
        const std::size_t col_dwa = file.column("dwa_label");
        std::set<std::pair<std::int64_t, std::string>> seen_pairs;
        std::map<std::string, std::set<std::string>> contributors;
        for (const auto& row : file.rows()) {
            const std::int64_t task_id = parse_task_id(file, row, file.field(row, col_task));
            auto task = data.tasks.find(task_id);
            if (task == data.tasks.end()) {
                throw IntegrityError("unknown task id " + std::to_string(task_id) +
                                     where(file.path(), row.line_no));
            }
            ContentModelLabel label = parse_label(file, row, file.field(row, col_dwa));
            auto activity = data.activities.find(label.raw);
            if (activity == data.activities.end()) {
                throw IntegrityError("unknown work activity label " + label.raw +
                                     where(file.path(), row.line_no));
            }
            if (activity->second.level != LabelLevel::Detailed) {
                throw IntegrityError("label " + label.raw + " is not a detailed work activity" +
                                     where(file.path(), row.line_no));
            }
            if (!seen_pairs.emplace(task_id, label.raw).second) {
                throw IntegrityError("duplicate task-to-DWA mapping (" + std::to_string(task_id) +
                                     ", " + label.raw + ")" + where(file.path(), row.line_no));
            }
            data.task_to_dwa[task_id].push_back(label.raw);
            contributors[label.raw].insert(task->second.occupation_code);
            task->second.dwa_labels.push_back(std::move(label));
        }
        for (auto& [task_id, labels] : data.task_to_dwa) {
            std::sort(labels.begin(), labels.end());
        }
        for (auto& [task_id, task] : data.tasks) {
            std::sort(task.dwa_labels.begin(), task.dwa_labels.end());
        }
        for (auto& [label, socs] : contributors) {
            data.dwa_to_occupations.emplace(label,
                                            std::vector<std::string>(socs.begin(), socs.end()));
        }
    }

    return Dataset(std::move(data));
}

namespace {

ControlMode parse_control_mode(const TsvFile& file, const TsvFile::Row& row,
                               const std::string& text) {
    const std::string m = lowercase(text);
    if (m == "teleop" || m == "analogous_teleop" || m == "analogousteleop") {
        return ControlMode::AnalogousTeleop;
    }
    if (m == "autonomous") return ControlMode::Autonomous;
    throw ParseError("bad control_mode '" + text + "'" + where(file.path(), row.line_no));
}

bool parse_bool(const TsvFile& file, const TsvFile::Row& row, const std::string& text) {
    const std::string b = lowercase(text);
    if (b == "true" || b == "1") return true;
    if (b == "false" || b == "0") return false;
    throw ParseError("bad succeeded value '" + text + "'" + where(file.path(), row.line_no));
}

// A packed fingerprint field is either element_id=level pairs joined by ';'
// (unlisted dimensions default to 0) or a dense ';'-joined level list whose
// count must equal the dataset dimension. An empty field means no
// requirements at all.
Fingerprint parse_packed_fingerprint(const TsvFile& file, const TsvFile::Row& row,
                                     const std::string& text, const std::string& subtask_id,
                                     const Dataset& dataset) {
    const std::size_t dim = dataset.dimension();
    if (text.empty()) return Fingerprint::zeros(dim);

    std::vector<std::string> pieces;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = text.find(';', start);
        if (semi == std::string::npos) {
            pieces.push_back(text.substr(start));
            break;
        }
        pieces.push_back(text.substr(start, semi - start));
        start = semi + 1;
    }

    std::vector<double> levels(dim, 0.0);
    if (text.find('=') != std::string::npos) {
        std::vector<char> listed(dim, 0);
        for (const auto& piece : pieces) {
            const std::size_t eq = piece.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ParseError("bad fingerprint entry '" + piece + "'" +
                                 where(file.path(), row.line_no));
            }
            const std::string elem = piece.substr(0, eq);
            auto index = dataset.primitive_index(elem);
            if (!index) {
                throw DimensionError("unknown primitive " + elem + " in subtask " + subtask_id +
                                     where(file.path(), row.line_no));
            }
            if (listed[*index]) {
                throw ParseError("primitive " + elem + " listed twice in subtask " + subtask_id +
                                 where(file.path(), row.line_no));
            }
            listed[*index] = 1;
            levels[*index] =
                parse_number(file, row, piece.substr(eq + 1), "level", 0.0, kMaxLevel);
        }
    } else {
        if (pieces.size() != dim) {
            throw DimensionError("subtask " + subtask_id + " lists " +
                                 std::to_string(pieces.size()) + " levels, expected " +
                                 std::to_string(dim) + where(file.path(), row.line_no));
        }
        for (std::size_t d = 0; d < dim; ++d) {
            levels[d] = parse_number(file, row, pieces[d], "level", 0.0, kMaxLevel);
        }
    }
    return Fingerprint(std::move(levels));
}

}  // namespace

std::vector<SubtaskRecord> load_subtask_ledger(const std::filesystem::path& path,
                                               const Dataset& dataset) {
    TsvFile file(path);
    const std::size_t col_id = file.column("subtask_id");
    const std::size_t col_desc = file.column("description");
    const std::size_t col_tag = file.column("type_tag");
    const std::size_t col_date = file.column("first_success_date");
    const std::size_t col_mode = file.column("control_mode");
    const std::size_t col_succ = file.column("succeeded");
    const std::size_t col_fp = file.column("fingerprint");

    std::vector<SubtaskRecord> records;
    std::unordered_set<std::string> seen;
    for (const auto& row : file.rows()) {
        SubtaskRecord rec;
        rec.subtask_id = file.field(row, col_id);
        if (rec.subtask_id.empty()) {
            throw ParseError("empty subtask_id" + where(file.path(), row.line_no));
        }
        if (!seen.insert(rec.subtask_id).second) {
            throw ParseError("duplicate subtask_id " + rec.subtask_id +
                             where(file.path(), row.line_no));
        }
        rec.description = file.field(row, col_desc);
        rec.type_tag = file.field(row, col_tag);
        try {
            rec.first_success_date = Date::parse(file.field(row, col_date));
        } catch (const BadDate& e) {
            throw BadDate(e.message() + where(file.path(), row.line_no));
        }
        rec.control_mode = parse_control_mode(file, row, file.field(row, col_mode));
        rec.succeeded = parse_bool(file, row, file.field(row, col_succ));
        rec.fingerprint =
            parse_packed_fingerprint(file, row, file.field(row, col_fp), rec.subtask_id, dataset);
        records.push_back(std::move(rec));
    }

    std::sort(records.begin(), records.end(), [](const SubtaskRecord& a, const SubtaskRecord& b) {
        if (a.first_success_date != b.first_success_date) {
            return a.first_success_date < b.first_success_date;
        }
        return a.subtask_id < b.subtask_id;
    });
    return records;
}

}  // namespace gplus

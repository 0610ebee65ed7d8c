#include "ldpower/io.hpp"

#include "ldpower/error.hpp"
#include "ldpower/table.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace ldpower {

namespace {

namespace fs = std::filesystem;

// Row accessor keyed by header name.
class CsvRow {
public:
    CsvRow(const std::map<std::string, std::size_t>& header, std::vector<std::string> fields)
        : header_(header), fields_(std::move(fields)) {}

    const std::string& at(const std::string& column) const {
        const auto it = header_.find(column);
        if (it == header_.end() || it->second >= fields_.size() || fields_[it->second].empty())
            throw InvalidInput("missing value for column '" + column + "'");
        return fields_[it->second];
    }

    std::optional<std::string> optional(const std::string& column) const {
        const auto it = header_.find(column);
        if (it == header_.end() || it->second >= fields_.size() || fields_[it->second].empty()) return std::nullopt;
        return fields_[it->second];
    }

private:
    const std::map<std::string, std::size_t>& header_;
    std::vector<std::string> fields_;
};

void read_csv(const fs::path& path, const std::vector<std::string>& required,
              const std::function<void(const CsvRow&)>& on_row) {
    std::ifstream in(path);
    if (!in) throw DataError(path.filename().string() + ": cannot open " + path.string());
    const std::string file = path.filename().string();
    std::string line;
    std::size_t row = 0;
    std::map<std::string, std::size_t> header;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (line.empty() || line == "\r") continue;
        try {
            auto fields = split_csv_line(line);
            if (header.empty()) {
                for (std::size_t i = 0; i < fields.size(); ++i) header[fields[i]] = i;
                for (const auto& col : required)
                    if (!header.contains(col)) throw InvalidInput("header lacks column '" + col + "'");
                continue;
            }
            if (fields.size() > header.size()) throw InvalidInput("more fields than header columns");
            on_row(CsvRow(header, std::move(fields)));
        } catch (const InvalidInput& e) {
            throw DataError(file + " row " + std::to_string(row) + ": " + e.what());
        }
    }
    if (header.empty()) throw DataError(file + ": missing header row");
}

bool parse_decision(const std::string& s) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw InvalidInput("decision must be 0 or 1, got '" + s + "'");
}

void write_table(const fs::path& path, const Table& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_csv(out, table);
}

} // namespace

Dataset load_dataset(const fs::path& dir) {
    Dataset d;
    read_csv(dir / "users.csv", {"user_id"}, [&](const CsvRow& r) { d.users.push_back(r.at("user_id")); });
    read_csv(dir / "areas.csv", {"area_id"}, [&](const CsvRow& r) {
        d.areas.push_back({r.at("area_id"), r.optional("name").value_or("")});
    });
    read_csv(dir / "issues.csv", {"issue_id", "area_id", "quorum_num", "quorum_den"}, [&](const CsvRow& r) {
        const auto quorum = Quorum::parse(r.at("quorum_num") + "/" + r.at("quorum_den"));
        d.issues.push_back({r.at("issue_id"), r.at("area_id"), quorum});
    });
    read_csv(dir / "initiatives.csv", {"initiative_id", "issue_id"}, [&](const CsvRow& r) {
        d.initiatives.push_back({r.at("initiative_id"), r.at("issue_id"), r.optional("author_id")});
    });
    read_csv(dir / "ballots.csv", {"initiative_id", "voter_id", "decision", "ts"}, [&](const CsvRow& r) {
        d.ballots.push_back({r.at("initiative_id"), r.at("voter_id"), parse_decision(r.at("decision")),
                             parse_timestamp(r.at("ts"))});
    });
    read_csv(dir / "delegations.csv", {"truster_id", "trustee_id", "scope", "valid_from"}, [&](const CsvRow& r) {
        DelegationEdge e;
        e.truster = r.at("truster_id");
        e.trustee = r.at("trustee_id");
        e.scope = Scope{parse_scope_kind(r.at("scope")), r.optional("scope_id").value_or("")};
        e.valid_from = parse_timestamp(r.at("valid_from"));
        if (auto to = r.optional("valid_to")) e.valid_to = parse_timestamp(*to);
        d.delegations.push_back(std::move(e));
    });
    validate(d);
    return d;
}

void write_dataset(const Dataset& d, const fs::path& dir) {
    fs::create_directories(dir);
    Table users{"users", {"user_id"}, {}};
    for (const auto& u : d.users) users.add_row({u});
    write_table(dir / "users.csv", users);

    Table areas{"areas", {"area_id", "name"}, {}};
    for (const auto& a : d.areas) areas.add_row({a.id, a.name});
    write_table(dir / "areas.csv", areas);

    Table issues{"issues", {"issue_id", "area_id", "quorum_num", "quorum_den"}, {}};
    for (const auto& i : d.issues) issues.add_row({i.id, i.area_id, i.quorum.num(), i.quorum.den()});
    write_table(dir / "issues.csv", issues);

    Table initiatives{"initiatives", {"initiative_id", "issue_id", "author_id"}, {}};
    for (const auto& i : d.initiatives) initiatives.add_row({i.id, i.issue_id, optional_cell(i.author)});
    write_table(dir / "initiatives.csv", initiatives);

    Table ballots{"ballots", {"initiative_id", "voter_id", "decision", "ts"}, {}};
    for (const auto& b : d.ballots)
        ballots.add_row({b.initiative_id, b.voter, std::int64_t{b.yes ? 1 : 0}, format_timestamp(b.ts)});
    write_table(dir / "ballots.csv", ballots);

    Table delegations{"delegations", {"truster_id", "trustee_id", "scope", "scope_id", "valid_from", "valid_to"}, {}};
    for (const auto& e : d.delegations)
        delegations.add_row({e.truster, e.trustee, to_string(e.scope.kind), e.scope.id.empty() ? Cell{} : Cell{e.scope.id},
                             format_timestamp(e.valid_from),
                             e.valid_to ? Cell{format_timestamp(*e.valid_to)} : Cell{}});
    write_table(dir / "delegations.csv", delegations);
}

} // namespace ldpower

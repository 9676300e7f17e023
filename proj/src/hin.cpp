#include "schain/hin.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "schain/error.hpp"

namespace schain {

namespace {

std::pair<std::string, std::string> canonical_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::string row_msg(const Record& rec, const std::string& what) {
  std::ostringstream os;
  os << what << " (row " << rec.line << ")";
  return os.str();
}

}  // namespace

std::optional<int> NetworkSchema::type_index(const std::string& name) const {
  for (std::size_t i = 0; i < object_types.size(); ++i)
    if (object_types[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool NetworkSchema::has_link(const std::string& a, const std::string& b) const {
  const auto want = canonical_pair(a, b);
  for (const auto& lt : link_types)
    if (canonical_pair(lt.first, lt.second) == want) return true;
  return false;
}

void NetworkSchema::validate() const {
  std::set<std::string> seen;
  for (const auto& t : object_types) {
    if (t.empty()) throw Error(ErrorKind::UnknownType, "empty object type name");
    if (!seen.insert(t).second)
      throw Error(ErrorKind::DuplicateId, "duplicate object type '" + t + "'");
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& lt : link_types) {
    if (!type_index(lt.first) || !type_index(lt.second))
      throw Error(ErrorKind::UnknownType,
                  "link type (" + lt.first + "," + lt.second + ") references undeclared type");
    if (!pairs.insert(canonical_pair(lt.first, lt.second)).second)
      throw Error(ErrorKind::DuplicateId,
                  "duplicate link type (" + lt.first + "," + lt.second + ")");
  }
}

int Hin::type_index_or_throw(const std::string& name) const {
  if (auto idx = schema.type_index(name)) return *idx;
  throw Error(ErrorKind::UnknownType, "unknown object type '" + name + "'");
}

const LinkMatrix* Hin::link_between(int a, int b) const {
  for (const auto& lm : links)
    if ((lm.type_a == a && lm.type_b == b) || (lm.type_a == b && lm.type_b == a)) return &lm;
  return nullptr;
}

std::string MetaPath::joined() const {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i > 0) out += '-';
    out += types[i];
  }
  return out;
}

bool MetaPath::palindrome() const {
  for (std::size_t i = 0, j = types.size(); i < j; ++i, --j)
    if (types[i] != types[j - 1]) return false;
  return true;
}

NetworkSchema infer_schema(const TextTable& node_records, const TextTable& edge_records) {
  NetworkSchema schema;
  std::unordered_map<std::string, std::string> type_of;  // object id -> type
  for (const auto& rec : node_records) {
    if (rec.fields.size() != 2)
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "expected <id>\\t<type>"));
    const auto& id = rec.fields[0];
    const auto& type = rec.fields[1];
    if (type.empty()) throw Error(ErrorKind::UnknownType, row_msg(rec, "empty type name"));
    if (!schema.type_index(type)) schema.object_types.push_back(type);
    type_of.emplace(id, type);  // duplicate ids diagnosed by parse_hin
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& rec : edge_records) {
    if (rec.fields.size() != 2)
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "expected <id_src>\\t<id_dst>"));
    const auto src = type_of.find(rec.fields[0]);
    const auto dst = type_of.find(rec.fields[1]);
    if (src == type_of.end())
      throw Error(ErrorKind::DanglingEndpoint, row_msg(rec, "unknown id '" + rec.fields[0] + "'"));
    if (dst == type_of.end())
      throw Error(ErrorKind::DanglingEndpoint, row_msg(rec, "unknown id '" + rec.fields[1] + "'"));
    auto pair = canonical_pair(src->second, dst->second);
    if (pairs.insert(pair).second) schema.link_types.push_back(std::move(pair));
  }
  schema.validate();
  return schema;
}

Hin parse_hin(const TextTable& node_records, const TextTable& edge_records,
              const std::map<std::string, TextTable>& attribute_tables,
              const NetworkSchema& schema) {
  schema.validate();
  Hin hin;
  hin.schema = schema;
  const std::size_t num_types = schema.object_types.size();
  hin.objects.resize(num_types);
  hin.ids.resize(num_types);
  hin.attributes.resize(num_types);

  // Objects: first-appearance order fixes per-type indices. Ids must be
  // globally unique, since edge and constraint records reference bare ids.
  std::unordered_map<std::string, int> type_of_id;
  for (const auto& rec : node_records) {
    if (rec.fields.size() != 2)
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "expected <id>\\t<type>"));
    const auto& id = rec.fields[0];
    const auto& type_name = rec.fields[1];
    if (id.empty()) throw Error(ErrorKind::MalformedRecord, row_msg(rec, "empty object id"));
    const auto type = schema.type_index(type_name);
    if (!type)
      throw Error(ErrorKind::UnknownType, row_msg(rec, "unknown type '" + type_name + "'"));
    if (type_of_id.contains(id))
      throw Error(ErrorKind::DuplicateId, row_msg(rec, "duplicate id '" + id + "'"));
    type_of_id.emplace(id, *type);
    hin.ids[*type].emplace(id, static_cast<int>(hin.objects[*type].size()));
    hin.objects[*type].push_back(id);
  }

  // Links, keyed by declared type pair.
  auto link_slot = [&](int a, int b) -> LinkMatrix& {
    for (auto& lm : hin.links)
      if ((lm.type_a == a && lm.type_b == b) || (lm.type_a == b && lm.type_b == a)) return lm;
    LinkMatrix lm;
    lm.type_a = std::min(a, b);
    lm.type_b = std::max(a, b);
    lm.adj_ab.resize(hin.objects[lm.type_a].size());
    lm.adj_ba.resize(hin.objects[lm.type_b].size());
    hin.links.push_back(std::move(lm));
    return hin.links.back();
  };
  for (const auto& lt : schema.link_types)
    link_slot(*schema.type_index(lt.first), *schema.type_index(lt.second));

  for (const auto& rec : edge_records) {
    if (rec.fields.size() != 2)
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "expected <id_src>\\t<id_dst>"));
    const auto src = type_of_id.find(rec.fields[0]);
    if (src == type_of_id.end())
      throw Error(ErrorKind::DanglingEndpoint, row_msg(rec, "unknown id '" + rec.fields[0] + "'"));
    const auto dst = type_of_id.find(rec.fields[1]);
    if (dst == type_of_id.end())
      throw Error(ErrorKind::DanglingEndpoint, row_msg(rec, "unknown id '" + rec.fields[1] + "'"));
    const int ta = src->second, tb = dst->second;
    if (!schema.has_link(schema.object_types[ta], schema.object_types[tb]))
      throw Error(ErrorKind::UndeclaredLinkType,
                  row_msg(rec, "no declared link type (" + schema.object_types[ta] + "," +
                                   schema.object_types[tb] + ")"));
    LinkMatrix& lm = link_slot(ta, tb);
    int ia = hin.ids[ta].at(rec.fields[0]);
    int ib = hin.ids[tb].at(rec.fields[1]);
    if (ta != lm.type_a) std::swap(ia, ib);
    auto& fwd = lm.adj_ab[ia];
    if (std::find(fwd.begin(), fwd.end(), ib) != fwd.end()) continue;  // 0/1 links
    fwd.push_back(ib);
    if (lm.type_a == lm.type_b) {
      if (ia != ib) lm.adj_ab[ib].push_back(ia);
    } else {
      lm.adj_ba[ib].push_back(ia);
    }
    ++lm.edge_count;
  }
  for (auto& lm : hin.links) {
    for (auto& nbrs : lm.adj_ab) std::sort(nbrs.begin(), nbrs.end());
    for (auto& nbrs : lm.adj_ba) std::sort(nbrs.begin(), nbrs.end());
    if (lm.type_a == lm.type_b) lm.adj_ba = lm.adj_ab;
  }

  // Attributes: one table per type; every object exactly one row.
  for (const auto& [type_name, table] : attribute_tables) {
    const auto type = schema.type_index(type_name);
    if (!type)
      throw Error(ErrorKind::UnknownType, "attribute table for unknown type '" + type_name + "'");
    const std::size_t n = hin.objects[*type].size();
    if (table.size() != n) {
      std::ostringstream os;
      os << "type " << type_name << " has " << n << " objects but " << table.size()
         << " attribute rows";
      throw Error(ErrorKind::AttributeRowMismatch, os.str());
    }
    if (table.empty()) continue;
    const std::size_t width = table.front().fields.size();
    if (width < 2)
      throw Error(ErrorKind::MalformedRecord,
                  row_msg(table.front(), "expected <id>\\t<v1>\\t..."));
    Matrix attrs(n, width - 1);
    std::vector<bool> seen(n, false);
    for (const auto& rec : table) {
      if (rec.fields.size() != width)
        throw Error(ErrorKind::MalformedRecord, row_msg(rec, "ragged attribute row"));
      const auto it = hin.ids[*type].find(rec.fields[0]);
      if (it == hin.ids[*type].end())
        throw Error(ErrorKind::UnknownId, row_msg(rec, "unknown id '" + rec.fields[0] + "'"));
      if (seen[it->second])
        throw Error(ErrorKind::DuplicateId,
                    row_msg(rec, "repeated attribute row for '" + rec.fields[0] + "'"));
      seen[it->second] = true;
      for (std::size_t j = 1; j < width; ++j) {
        double v = 0.0;
        if (!parse_double(rec.fields[j], v))
          throw Error(ErrorKind::MalformedRecord,
                      row_msg(rec, "bad number '" + rec.fields[j] + "'"));
        if (!std::isfinite(v))
          throw Error(ErrorKind::NonFiniteValue, row_msg(rec, "non-finite attribute value"));
        attrs(it->second, j - 1) = v;
      }
    }
    hin.attributes[*type] = std::move(attrs);
  }
  return hin;
}

MetaPath validate_metapath(const std::vector<std::string>& type_names,
                           const NetworkSchema& schema, bool require_symmetric) {
  if (type_names.size() < 2)
    throw Error(ErrorKind::MalformedRecord, "meta-path needs at least two types");
  for (const auto& t : type_names)
    if (!schema.type_index(t))
      throw Error(ErrorKind::UnknownType, "meta-path references unknown type '" + t + "'");
  for (std::size_t i = 0; i + 1 < type_names.size(); ++i) {
    if (!schema.has_link(type_names[i], type_names[i + 1])) {
      std::ostringstream os;
      os << "no link type (" << type_names[i] << "," << type_names[i + 1] << ") at position " << i;
      throw Error(ErrorKind::NoSuchLinkType, os.str());
    }
  }
  MetaPath path{type_names};
  if (require_symmetric && !path.symmetric())
    throw Error(ErrorKind::AsymmetricPath,
                "meta-path " + path.joined() +
                    " is not symmetric (needs a palindromic type sequence with an even hop count)");
  return path;
}

MetaPath parse_metapath(const std::string& joined, const NetworkSchema& schema,
                        bool require_symmetric) {
  std::vector<std::string> names;
  std::string cur;
  for (const char c : joined) {
    if (c == '-') {
      names.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  names.push_back(cur);
  return validate_metapath(names, schema, require_symmetric);
}

ConstraintSet parse_constraints(const TextTable& records, const Hin& hin,
                                const std::string& target_type) {
  const int type = hin.type_index_or_throw(target_type);
  const auto& index_of = hin.ids[type];
  std::set<std::pair<int, int>> must, cannot;
  for (const auto& rec : records) {
    if (rec.fields.size() != 3)
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "expected <ML|CL>\\t<id_u>\\t<id_v>"));
    const auto& tag = rec.fields[0];
    if (tag != "ML" && tag != "CL")
      throw Error(ErrorKind::MalformedRecord, row_msg(rec, "constraint tag must be ML or CL"));
    const auto u = index_of.find(rec.fields[1]);
    if (u == index_of.end())
      throw Error(ErrorKind::UnknownId,
                  row_msg(rec, "'" + rec.fields[1] + "' is not a " + target_type + " object"));
    const auto v = index_of.find(rec.fields[2]);
    if (v == index_of.end())
      throw Error(ErrorKind::UnknownId,
                  row_msg(rec, "'" + rec.fields[2] + "' is not a " + target_type + " object"));
    if (u->second == v->second)
      throw Error(ErrorKind::SelfPair, row_msg(rec, "constraint pairs an object with itself"));
    const auto pair = std::minmax(u->second, v->second);
    (tag == "ML" ? must : cannot).insert({pair.first, pair.second});
  }
  for (const auto& p : must)
    if (cannot.contains(p)) {
      std::ostringstream os;
      os << "pair (" << hin.objects[type][p.first] << "," << hin.objects[type][p.second]
         << ") is both must-link and cannot-link";
      throw Error(ErrorKind::ContradictoryConstraint, os.str());
    }
  ConstraintSet cs;
  cs.must_link.assign(must.begin(), must.end());
  cs.cannot_link.assign(cannot.begin(), cannot.end());
  return cs;
}

}  // namespace schain

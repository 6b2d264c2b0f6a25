/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#ifndef EXCO_IO_HPP
#define EXCO_IO_HPP

#include "exco/exactcomp.hpp"
#include "exco/fixtures.hpp"
#include "exco/syntactic.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace exco {

/// Parses a file; missing files and malformed JSON raise InputError.
nlohmann::json read_json_file(const std::filesystem::path& path);

struct CategoryFile {
  std::shared_ptr<const TableCategory> category;
  /// Present when the file lists "lambda".
  std::optional<ArrowClass> lambda;
};

/// .cat.json: objects, arrows, identities, compose, terminal, products,
/// lambda. Unknown keys are rejected.
CategoryFile category_from_json(const nlohmann::json& j);
nlohmann::json category_to_json(const TableCategory& c);

/// .doc.json, or {"builtin": NAME, "delta": {...}} for a builtin fixture with
/// some equality predicates replaced. `dir` resolves a category given by path.
Fixture doctrine_from_json(const nlohmann::json& j, const std::filesystem::path& dir);
/// "builtin:NAME" or a path to a .doc.json file.
Fixture load_doctrine(const std::string& ref);
/// Table doctrines on table categories only.
nlohmann::json doctrine_to_json(const Fixture& f);

/// .cmp.json: per listed object the classes, order matrix and meet table,
/// then the quantifier and reindexing tables by arrow name.
nlohmann::json completion_dump(const CompletedDoctrine& pe);

/// .per.json: {"objects": [...], "parameters": [...], "morphisms": [...]}.
/// "rho" is an element name or one of "delta", "top".
struct CandidateFile {
  std::vector<PerObject> objects;
  std::vector<ObjectId> parameters;
  std::vector<PerMorphism> morphisms;
};
CandidateFile candidates_from_json(const ExactCompletion& ex, const nlohmann::json& j);

struct Query {
  std::vector<std::string> context;
  std::string lhs;
  std::string rhs;
};
Query query_from_json(const nlohmann::json& j);

/// Lax-idempotence instances: {"source": ref, "target": ref, "morphisms":
/// [{"name", "map"}]} with map "identity", "top" or element names.
struct PairFile {
  Fixture source;
  Fixture target;
  std::vector<std::pair<std::string, nlohmann::json>> morphisms;
};
PairFile pair_from_json(const nlohmann::json& j, const std::filesystem::path& dir);
DoctrineMorphism pair_morphism(const Doctrine& source, const Doctrine& target,
                               const nlohmann::json& map);

}  // namespace exco

#endif  // EXCO_IO_HPP

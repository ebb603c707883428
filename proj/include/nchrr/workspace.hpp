#pragma once

#include "nchrr/constructors.hpp"

#include <json.hpp>

namespace nchrr {

using Json = nlohmann::json;

// A named collection of algebras, modules, groups, and chains loaded from
// one self-contained JSON file. One scalar field per workspace.
struct Workspace {
    Field field;
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, DirectedAlgebra> quivers;
    std::map<std::string, FiniteGroupData> groups;
    std::map<std::string, LambdaAlgebra> lambdas;        // Λ(V,G) per group with action
    std::map<std::string, LambdaAlgebra> group_algebras;  // k[G] per group
    std::map<std::string, FrobeniusData> frobenius;

    struct ModuleEntry {
        std::string algebra_ref;
        TwistedModule module;
        std::optional<Morphism> pi;
    };
    std::map<std::string, ModuleEntry> modules;

    struct ChainEntry {
        std::string algebra_ref;
        bool op = false;  // chain lives over the opposite algebra
        HochschildChain chain;
    };
    std::map<std::string, ChainEntry> chains;

    std::map<std::string, ChainComplex> complexes;

    static Workspace load_file(const std::string& path, const std::optional<Field>& field_override = {});
    static Workspace load_json(const Json& j, const std::optional<Field>& field_override = {});

    // Resolves "name", "quiver:name", "group:name", "lambda:name".
    AlgebraPtr algebra(const std::string& ref) const;
};

// JSON (de)serialization used by the workspace and the CLI.
Scalar scalar_from_json(const Json& j, const Field& f);
AlgebraPtr algebra_from_json(const Json& j, const Field& f);
ChainComplex complex_from_json(const Json& j, const Field& f);
HochschildChain chain_from_json(const Json& j, const AlgebraPtr& a);
Json chain_to_json(const HochschildChain& c);
Json gram_to_json(const SparseMatrix& g);
Json validation_to_json(const ValidationReport& r);

}  // namespace nchrr

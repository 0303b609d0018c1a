#pragma once

#include <optional>
#include <string>

#include "randres/clause.hpp"
#include "randres/varspace.hpp"

namespace randres {

struct DimacsFile {
    Cnf cnf;
    int num_vars = 0;
    std::optional<VarSpace> space; // present when params/block comments were found
};

/// Extended DIMACS: "p cnf <vars> <clauses>" preceded by
/// "c params n=<n> omega=<w> xi=<x>" and "c block p|q|r <lo>..<hi>" comments
/// when a variable space is supplied.
std::string write_dimacs(const Cnf& f, int num_vars, const std::optional<VarSpace>& vs = {});

DimacsFile parse_dimacs(const std::string& text);
DimacsFile load_dimacs(const std::string& path);
void save_dimacs(const std::string& path, const Cnf& f, int num_vars,
                 const std::optional<VarSpace>& vs = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace randres

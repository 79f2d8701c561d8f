#pragma once

#include <string_view>
#include <vector>

#include "jbi/lexer.hpp"
#include "jbi/syntax.hpp"

namespace jbi {

/// Parses a program file:
///
///   program  := { procdef } ;
///   procdef  := "proc" IDENT "(" [ IDENT { "," IDENT } ] ")" "=" stmt "." ;
///   stmt     := prim { ";" prim } ;
///   prim     := "true" | IDENT "=" expr | IDENT "(" [ expr { "," expr } ] ")"
///             | "read" "(" IDENT ")" | "print" "(" expr ")"
///             | "kchoose" "(" stmt { "," stmt } ")"
///             | "mchoose" "(" STRING ":" stmt { "," STRING ":" stmt } ")"
///             | "(" stmt ")" ;
///   expr     := term { ("+"|"-") term } ;
///   term     := factor { "*" factor } ;
///   factor   := INT | STRING | IDENT | "(" expr ")" ;
///
/// Throws ParseError at the first violation, including duplicate procedure
/// names, duplicate parameters and duplicate mchoose labels.
std::vector<ProcDef> parse_program(std::string_view source);

/// Parses a single statement that must span the whole input.
Stmt parse_goal(std::string_view source);

}  // namespace jbi

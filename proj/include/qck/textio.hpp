/**
 * @file textio.hpp
 * @brief Canonical text and JSON forms of coefficients, monomials and elements.
 *
 * Element grammar (whitespace between tokens is ignored):
 *
 *     element   := ["-"] term (("+" | "-") term)*
 *     term      := ["(" laurent ")" "*"] mono
 *     mono      := "0" | "1" | plainmono | "hat(" plainmono ")"
 *     plainmono := gen ("*" gen)*
 *     gen       := tree | "e" | "e^" int
 *     tree      := "[" tree* "]"
 *
 * Printing emits no whitespace and orders monomials plain before hat, then by
 * tree word, then by e-power.
 */

#pragma once

#include "qck/algebra.hpp"
#include "qck/errors.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qck {

std::string print_monomial(const Monomial& m);
std::string print_element(const Element& a);

/// Tensor terms print as left|right, e.g. "e|[]+[]|e".
std::string print_tensor(const TensorElement& a);
std::string print_tensor(const TripleTensor& a);

Element parse_element(std::string_view text);

class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& message, const std::string& path)
        : std::runtime_error(path + ": " + message), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

nlohmann::json coefficient_to_json(const Laurent& c);
nlohmann::json element_to_json(const Element& a);
nlohmann::json tensor_to_json(const TensorElement& a);

Element element_from_json(const nlohmann::json& j);
TensorElement tensor_from_json(const nlohmann::json& j);

} // namespace qck

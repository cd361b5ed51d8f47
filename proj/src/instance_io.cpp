#include "symcert/instance_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "symcert/errors.hpp"
#include "symcert/version.hpp"

namespace symcert {
namespace {

using nlohmann::json;

void expect_keys(const json& obj, const char* where,
                 std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(std::string(where) + " has an unknown field '" +
                       it.key() + "'");
    }
  }
}

const json& need(const json& obj, const char* where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string(where) + " is missing the field '" + key +
                     "'");
  }
  return *it;
}

long need_long(const json& v, const std::string& what, long lo, long hi) {
  if (!v.is_number_integer()) {
    throw ParseError(what + " must be an integer");
  }
  long long x = v.get<long long>();
  if (x < lo || x > hi) {
    throw ParseError(what + " must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return static_cast<long>(x);
}

Rational need_rational(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  throw ParseError(what + " must be rational text like \"p/q\" or an integer");
}

std::string need_string(const json& v, const std::string& what) {
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ParseError(what + " must be a non-empty string");
  }
  return v.get<std::string>();
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

ProblemInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance is not valid structured text: ") +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be an object");
  expect_keys(doc, "instance",
              {"schema", "dimension_n", "chern_min", "product_length_r",
               "irrational_basis", "rotation_numbers", "search", "b2"});
  if (need_string(need(doc, "instance", "schema"), "schema") !=
      kInstanceSchema) {
    throw ParseError(std::string("schema must be '") + kInstanceSchema + "'");
  }

  long n = need_long(need(doc, "instance", "dimension_n"), "dimension_n", 1, 32);
  long chern = need_long(need(doc, "instance", "chern_min"), "chern_min", 1,
                         1000000000L);
  long r = need_long(need(doc, "instance", "product_length_r"),
                     "product_length_r", 1, 64);

  auto basis = std::make_shared<IrrationalBasis>();
  const json& basis_arr = need(doc, "instance", "irrational_basis");
  if (!basis_arr.is_array()) {
    throw ParseError("irrational_basis must be an array");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < basis_arr.size(); ++i) {
    const json& entry = basis_arr[i];
    std::string where = "irrational_basis[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    expect_keys(entry, where.c_str(), {"name", "decimal", "precision_bits"});
    std::string name =
        need_string(need(entry, where.c_str(), "name"), where + ".name");
    if (!names.insert(name).second) {
      throw ParseError("irrational_basis declares '" + name + "' twice");
    }
    std::string decimal =
        need_string(need(entry, where.c_str(), "decimal"), where + ".decimal");
    long bits = need_long(need(entry, where.c_str(), "precision_bits"),
                          where + ".precision_bits", 1, 65536);
    try {
      basis->add_decimal(name, decimal, static_cast<unsigned>(bits));
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  const json& rot = need(doc, "instance", "rotation_numbers");
  if (!rot.is_array() || static_cast<long>(rot.size()) != n) {
    throw ParseError("rotation_numbers must be an array of dimension_n = " +
                     std::to_string(n) + " entries");
  }
  std::vector<ExactAngle> lambdas;
  for (std::size_t i = 0; i < rot.size(); ++i) {
    const json& entry = rot[i];
    std::string where = "rotation_numbers[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    expect_keys(entry, where.c_str(), {"rational", "irrational"});
    ExactAngle lambda;
    if (entry.contains("rational")) {
      lambda = ExactAngle(need_rational(entry["rational"], where + ".rational"));
    }
    if (entry.contains("irrational")) {
      const json& terms = entry["irrational"];
      if (!terms.is_array()) {
        throw ParseError(where + ".irrational must be an array");
      }
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const json& term = terms[t];
        std::string twhere = where + ".irrational[" + std::to_string(t) + "]";
        if (!term.is_object()) throw ParseError(twhere + " must be an object");
        expect_keys(term, twhere.c_str(), {"basis", "coeff"});
        std::string name =
            need_string(need(term, twhere.c_str(), "basis"), twhere + ".basis");
        if (!basis->contains(name)) {
          throw ParseError(twhere + " refers to undeclared basis entry '" +
                           name + "'");
        }
        Rational coeff =
            need_rational(need(term, twhere.c_str(), "coeff"), twhere + ".coeff");
        lambda += ExactAngle::multiple(name, coeff);
      }
    }
    lambdas.push_back(std::move(lambda));
  }

  long max_iterate = 100000;
  long precision_bits = 256;
  if (doc.contains("search")) {
    const json& search = doc["search"];
    if (!search.is_object()) throw ParseError("search must be an object");
    expect_keys(search, "search", {"max_iterate", "precision_bits"});
    if (search.contains("max_iterate")) {
      max_iterate = need_long(search["max_iterate"], "search.max_iterate", 1,
                              1000000000L);
    }
    if (search.contains("precision_bits")) {
      precision_bits = need_long(search["precision_bits"],
                                 "search.precision_bits", 32, 65536);
    }
  }

  Rational epsilon(1, 20);
  if (doc.contains("b2")) {
    const json& b2 = doc["b2"];
    if (!b2.is_object()) throw ParseError("b2 must be an object");
    expect_keys(b2, "b2", {"epsilon"});
    if (b2.contains("epsilon")) {
      epsilon = need_rational(b2["epsilon"], "b2.epsilon");
      if (epsilon <= 0 || epsilon >= 1) {
        throw ParseError("b2.epsilon must lie strictly between 0 and 1");
      }
    }
  }

  return ProblemInstance{
      n,
      Integer(chern),
      r,
      basis,
      SymplecticPath(std::move(lambdas), basis,
                     static_cast<unsigned>(precision_bits)),
      max_iterate,
      static_cast<unsigned>(precision_bits),
      epsilon,
      fnv1a64_hex(text)};
}

ProblemInstance load_instance(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw ParseError("cannot read instance file '" + file_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace symcert

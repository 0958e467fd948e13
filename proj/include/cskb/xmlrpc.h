// Copyright 2026 The cskb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// XML-RPC method calls, responses and faults.

#ifndef CSKB_XMLRPC_H_
#define CSKB_XMLRPC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cskb::xmlrpc {

class Value {
 public:
  enum class Kind { kNil, kBool, kInt, kDouble, kString, kArray, kStruct };
  using Array = std::vector<Value>;
  using Struct = std::map<std::string, Value>;

  Value() = default;
  Value(bool b) : kind_(Kind::kBool), bool_(b) {}
  Value(int v) : kind_(Kind::kInt), int_(v) {}
  Value(int64_t v) : kind_(Kind::kInt), int_(v) {}
  Value(double v) : kind_(Kind::kDouble), double_(v) {}
  Value(const char *s) : kind_(Kind::kString), string_(s) {}
  Value(std::string s) : kind_(Kind::kString), string_(std::move(s)) {}
  Value(std::string_view s) : kind_(Kind::kString), string_(s) {}
  Value(Array a) : kind_(Kind::kArray), array_(std::move(a)) {}
  Value(Struct s) : kind_(Kind::kStruct), struct_(std::move(s)) {}

  Kind kind() const { return kind_; }
  bool is_nil() const { return kind_ == Kind::kNil; }
  bool is_string() const { return kind_ == Kind::kString; }
  bool is_array() const { return kind_ == Kind::kArray; }
  bool is_struct() const { return kind_ == Kind::kStruct; }
  bool is_int() const { return kind_ == Kind::kInt; }
  bool is_double() const { return kind_ == Kind::kDouble; }
  bool is_bool() const { return kind_ == Kind::kBool; }

  // Accessors throw std::invalid_argument on a kind mismatch. AsDouble also
  // accepts integers.
  bool AsBool() const;
  int64_t AsInt() const;
  double AsDouble() const;
  const std::string &AsString() const;
  const Array &AsArray() const;
  const Struct &AsStruct() const;
  const Value &operator[](const std::string &member) const;

  bool operator==(const Value &) const = default;

 private:
  Kind kind_ = Kind::kNil;
  bool bool_ = false;
  int64_t int_ = 0;
  double double_ = 0.0;
  std::string string_;
  Array array_;
  Struct struct_;
};

struct MethodCall {
  std::string method;
  std::vector<Value> params;
};

struct Fault {
  int code = 0;
  std::string message;
};

// Raised by handlers to produce a fault response.
class FaultError : public std::runtime_error {
 public:
  FaultError(int code, const std::string &message)
      : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Response {
  std::optional<Value> value;
  std::optional<Fault> fault;
};

std::string EncodeValue(const Value &value);
std::string EncodeCall(const MethodCall &call);
std::string EncodeResponse(const Value &value);
std::string EncodeFault(const Fault &fault);

// Throw ParseError on malformed documents.
MethodCall DecodeCall(std::string_view xml);
Response DecodeResponse(std::string_view xml);

}  // namespace cskb::xmlrpc

#endif  // CSKB_XMLRPC_H_

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

#include "cskb/xmlrpc.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb::xmlrpc {

namespace {

[[noreturn]] void KindError(const char *wanted) {
  throw std::invalid_argument(std::string("xml-rpc value is not ") + wanted);
}

// Minimal XML element tree: enough for the method-call vocabulary.
struct Node {
  std::string name;
  std::string text;  // concatenated character data
  std::vector<std::unique_ptr<Node>> children;

  const Node *Child(std::string_view tag) const {
    for (const auto &c : children) {
      if (c->name == tag) return c.get();
    }
    return nullptr;
  }
};

class XmlReader {
 public:
  explicit XmlReader(std::string_view xml) : s_(xml) {}

  std::unique_ptr<Node> ReadDocument() {
    SkipMisc();
    auto root = ReadElement();
    SkipMisc();
    if (pos_ != s_.size()) Fail("trailing content");
    return root;
  }

 private:
  [[noreturn]] void Fail(const std::string &what) const {
    throw ParseError("xml: " + what + " at offset " + std::to_string(pos_));
  }

  bool Consume(std::string_view token) {
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void SkipWhitespace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  void SkipUntil(std::string_view end) {
    size_t found = s_.find(end, pos_);
    if (found == std::string_view::npos) Fail("unterminated markup");
    pos_ = found + end.size();
  }

  // Whitespace, declarations, comments and processing instructions.
  void SkipMisc() {
    while (true) {
      SkipWhitespace();
      if (Consume("<?")) {
        SkipUntil("?>");
      } else if (Consume("<!--")) {
        SkipUntil("-->");
      } else if (Consume("<!DOCTYPE")) {
        SkipUntil(">");
      } else {
        return;
      }
    }
  }

  std::string ReadName() {
    size_t start = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == '/' ||
          c == '=') {
        break;
      }
      ++pos_;
    }
    if (start == pos_) Fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  void SkipAttributes() {
    while (true) {
      SkipWhitespace();
      if (pos_ >= s_.size()) Fail("unterminated tag");
      if (s_[pos_] == '>' || s_[pos_] == '/') return;
      ReadName();
      SkipWhitespace();
      if (!Consume("=")) Fail("expected '='");
      SkipWhitespace();
      if (pos_ >= s_.size()) Fail("unterminated attribute");
      char quote = s_[pos_++];
      if (quote != '"' && quote != '\'') Fail("expected quote");
      size_t end = s_.find(quote, pos_);
      if (end == std::string_view::npos) Fail("unterminated attribute");
      pos_ = end + 1;
    }
  }

  static void AppendUtf8(std::string &out, uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  void ReadEntity(std::string &out) {
    size_t end = s_.find(';', pos_);
    if (end == std::string_view::npos) Fail("unterminated entity");
    std::string_view name = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "amp") {
      out += '&';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (name.size() > 1 && name[0] == '#') {
      int base = 10;
      std::string_view digits = name.substr(1);
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits.remove_prefix(1);
      }
      uint32_t cp = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        Fail("bad character reference");
      }
      AppendUtf8(out, cp);
    } else {
      Fail("unknown entity &" + std::string(name) + ";");
    }
  }

  std::unique_ptr<Node> ReadElement() {
    if (!Consume("<")) Fail("expected '<'");
    auto node = std::make_unique<Node>();
    node->name = ReadName();
    SkipAttributes();
    if (Consume("/>")) return node;
    if (!Consume(">")) Fail("expected '>'");
    while (true) {
      if (pos_ >= s_.size()) Fail("unterminated element <" + node->name + ">");
      if (Consume("</")) {
        std::string closing = ReadName();
        if (closing != node->name) Fail("mismatched </" + closing + ">");
        SkipWhitespace();
        if (!Consume(">")) Fail("expected '>'");
        return node;
      }
      if (Consume("<!--")) {
        SkipUntil("-->");
      } else if (Consume("<![CDATA[")) {
        size_t end = s_.find("]]>", pos_);
        if (end == std::string_view::npos) Fail("unterminated CDATA");
        node->text.append(s_.substr(pos_, end - pos_));
        pos_ = end + 3;
      } else if (s_[pos_] == '<') {
        node->children.push_back(ReadElement());
      } else if (s_[pos_] == '&') {
        ++pos_;
        ReadEntity(node->text);
      } else {
        node->text += s_[pos_++];
      }
    }
  }

  std::string_view s_;
  size_t pos_ = 0;
};

std::string Escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void Encode(const Value &v, std::string &out) {
  out += "<value>";
  switch (v.kind()) {
    case Value::Kind::kNil:
      out += "<nil/>";
      break;
    case Value::Kind::kBool:
      out += v.AsBool() ? "<boolean>1</boolean>" : "<boolean>0</boolean>";
      break;
    case Value::Kind::kInt: {
      int64_t n = v.AsInt();
      bool small = n >= std::numeric_limits<int32_t>::min() &&
                   n <= std::numeric_limits<int32_t>::max();
      out += small ? "<int>" : "<i8>";
      out += std::to_string(n);
      out += small ? "</int>" : "</i8>";
      break;
    }
    case Value::Kind::kDouble: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v.AsDouble());
      out += "<double>";
      out += buf;
      out += "</double>";
      break;
    }
    case Value::Kind::kString:
      out += "<string>";
      out += Escape(v.AsString());
      out += "</string>";
      break;
    case Value::Kind::kArray:
      out += "<array><data>";
      for (const Value &item : v.AsArray()) Encode(item, out);
      out += "</data></array>";
      break;
    case Value::Kind::kStruct:
      out += "<struct>";
      for (const auto &[name, member] : v.AsStruct()) {
        out += "<member><name>";
        out += Escape(name);
        out += "</name>";
        Encode(member, out);
        out += "</member>";
      }
      out += "</struct>";
      break;
  }
  out += "</value>";
}

int64_t ParseInt(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text[0] == '+') text.remove_prefix(1);
  int64_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad xml-rpc integer: " + std::string(text));
  }
  return n;
}

Value DecodeValue(const Node &node) {
  if (node.name != "value") throw ParseError("expected <value>, got <" + node.name + ">");
  if (node.children.empty()) return Value(node.text);
  const Node &typed = *node.children.front();
  const std::string &t = typed.name;
  if (t == "string") return Value(typed.text);
  if (t == "int" || t == "i4" || t == "i8") return Value(ParseInt(typed.text));
  if (t == "boolean") {
    int64_t b = ParseInt(typed.text);
    if (b != 0 && b != 1) throw ParseError("bad xml-rpc boolean");
    return Value(b == 1);
  }
  if (t == "double") {
    std::string text(Trim(typed.text));
    char *end = nullptr;
    double d = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw ParseError("bad xml-rpc double: " + text);
    }
    return Value(d);
  }
  if (t == "nil") return Value();
  if (t == "array") {
    const Node *data = typed.Child("data");
    if (data == nullptr) throw ParseError("array without <data>");
    Value::Array items;
    for (const auto &child : data->children) items.push_back(DecodeValue(*child));
    return Value(std::move(items));
  }
  if (t == "struct") {
    Value::Struct members;
    for (const auto &member : typed.children) {
      if (member->name != "member") throw ParseError("struct child is not <member>");
      const Node *name = member->Child("name");
      const Node *value = member->Child("value");
      if (name == nullptr || value == nullptr) {
        throw ParseError("member needs <name> and <value>");
      }
      members[name->text] = DecodeValue(*value);
    }
    return Value(std::move(members));
  }
  throw ParseError("unsupported xml-rpc type <" + t + ">");
}

std::vector<Value> DecodeParams(const Node *params) {
  std::vector<Value> out;
  if (params == nullptr) return out;
  for (const auto &param : params->children) {
    if (param->name != "param") throw ParseError("params child is not <param>");
    const Node *value = param->Child("value");
    if (value == nullptr) throw ParseError("param without <value>");
    out.push_back(DecodeValue(*value));
  }
  return out;
}

constexpr std::string_view kDeclaration = "<?xml version=\"1.0\"?>\n";

}  // namespace

bool Value::AsBool() const {
  if (kind_ != Kind::kBool) KindError("a boolean");
  return bool_;
}

int64_t Value::AsInt() const {
  if (kind_ != Kind::kInt) KindError("an integer");
  return int_;
}

double Value::AsDouble() const {
  if (kind_ == Kind::kInt) return static_cast<double>(int_);
  if (kind_ != Kind::kDouble) KindError("a double");
  return double_;
}

const std::string &Value::AsString() const {
  if (kind_ != Kind::kString) KindError("a string");
  return string_;
}

const Value::Array &Value::AsArray() const {
  if (kind_ != Kind::kArray) KindError("an array");
  return array_;
}

const Value::Struct &Value::AsStruct() const {
  if (kind_ != Kind::kStruct) KindError("a struct");
  return struct_;
}

const Value &Value::operator[](const std::string &member) const {
  const Struct &members = AsStruct();
  auto it = members.find(member);
  if (it == members.end()) {
    throw std::invalid_argument("xml-rpc struct has no member " + member);
  }
  return it->second;
}

std::string EncodeValue(const Value &value) {
  std::string out;
  Encode(value, out);
  return out;
}

std::string EncodeCall(const MethodCall &call) {
  std::string out(kDeclaration);
  out += "<methodCall><methodName>";
  out += Escape(call.method);
  out += "</methodName><params>";
  for (const Value &p : call.params) {
    out += "<param>";
    Encode(p, out);
    out += "</param>";
  }
  out += "</params></methodCall>\n";
  return out;
}

std::string EncodeResponse(const Value &value) {
  std::string out(kDeclaration);
  out += "<methodResponse><params><param>";
  Encode(value, out);
  out += "</param></params></methodResponse>\n";
  return out;
}

std::string EncodeFault(const Fault &fault) {
  Value::Struct members{{"faultCode", Value(fault.code)},
                        {"faultString", Value(fault.message)}};
  std::string out(kDeclaration);
  out += "<methodResponse><fault>";
  Encode(Value(std::move(members)), out);
  out += "</fault></methodResponse>\n";
  return out;
}

MethodCall DecodeCall(std::string_view xml) {
  std::unique_ptr<Node> root = XmlReader(xml).ReadDocument();
  if (root->name != "methodCall") throw ParseError("expected <methodCall>");
  const Node *name = root->Child("methodName");
  if (name == nullptr) throw ParseError("methodCall without <methodName>");
  MethodCall call;
  call.method = std::string(Trim(name->text));
  call.params = DecodeParams(root->Child("params"));
  return call;
}

Response DecodeResponse(std::string_view xml) {
  std::unique_ptr<Node> root = XmlReader(xml).ReadDocument();
  if (root->name != "methodResponse") throw ParseError("expected <methodResponse>");
  Response response;
  if (const Node *fault = root->Child("fault")) {
    const Node *value = fault->Child("value");
    if (value == nullptr) throw ParseError("fault without <value>");
    Value v = DecodeValue(*value);
    try {
      response.fault = Fault{static_cast<int>(v["faultCode"].AsInt()),
                             v["faultString"].AsString()};
    } catch (const std::invalid_argument &e) {
      throw ParseError(std::string("malformed fault: ") + e.what());
    }
    return response;
  }
  std::vector<Value> params = DecodeParams(root->Child("params"));
  if (params.size() != 1) throw ParseError("response must carry one value");
  response.value = std::move(params.front());
  return response;
}

}  // namespace cskb::xmlrpc

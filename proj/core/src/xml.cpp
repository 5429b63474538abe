#include "uiml/xml.hpp"

#include <cstdint>

namespace uiml::xml {

const Attribute* Element::find_attribute(std::string_view attr) const {
  for (const auto& a : attributes) {
    if (a.name == attr) return &a;
  }
  return nullptr;
}

std::optional<std::string> Element::attribute(std::string_view attr) const {
  if (const auto* a = find_attribute(attr)) return a->value;
  return std::nullopt;
}

std::string Element::text() const {
  std::string out;
  for (const auto& child : children) {
    if (const auto* t = std::get_if<Text>(&child)) out += t->value;
  }
  return out;
}

std::vector<const Element*> Element::elements() const {
  std::vector<const Element*> out;
  for (const auto& child : children) {
    if (const auto* e = std::get_if<Element>(&child)) out.push_back(e);
  }
  return out;
}

namespace {

bool is_name_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || u >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void append_utf8(std::string& out, std::uint32_t cp) {
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

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  Document run() {
    Document doc;
    skip_prolog(doc);
    if (eof() || peek() != '<') fail("expected root element");
    doc.root = element();
    skip_misc();
    if (!eof()) fail("content after root element");
    return doc;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  SourceLocation here() const { return SourceLocation{pos_, line_, col_}; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(here(), what); }
  [[noreturn]] static void fail_at(SourceLocation at, const std::string& what) {
    throw UimlError(ErrorKind::Syntax, "MalformedXml", what, at);
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !eof(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void expect(std::string_view s) {
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
    advance(s.size());
  }

  void skip_space() {
    while (!eof() && is_space(peek())) advance();
  }

  void skip_until(std::string_view terminator, const char* what) {
    auto found = src_.find(terminator, pos_);
    if (found == std::string_view::npos) fail(std::string("unterminated ") + what);
    advance(found + terminator.size() - pos_);
  }

  void skip_misc() {
    for (;;) {
      skip_space();
      if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else {
        return;
      }
    }
  }

  void skip_prolog(Document& doc) {
    if (starts_with("\xEF\xBB\xBF")) advance(3);
    for (;;) {
      skip_misc();
      if (!starts_with("<!DOCTYPE")) return;
      if (doc.doctype) fail("duplicate DOCTYPE");
      advance(9);
      auto begin = pos_;
      // Internal subsets are skipped by bracket matching; nothing is ever fetched.
      int brackets = 0;
      char quote = '\0';
      while (!eof()) {
        char c = peek();
        if (quote) {
          if (c == quote) quote = '\0';
        } else if (c == '"' || c == '\'') {
          quote = c;
        } else if (c == '[') {
          ++brackets;
        } else if (c == ']') {
          --brackets;
        } else if (c == '>' && brackets == 0) {
          break;
        }
        advance();
      }
      if (eof()) fail("unterminated DOCTYPE");
      std::string body(src_.substr(begin, pos_ - begin));
      auto first = body.find_first_not_of(" \t\r\n");
      auto last = body.find_last_not_of(" \t\r\n");
      doc.doctype = first == std::string::npos ? "" : body.substr(first, last - first + 1);
      advance();
    }
  }

  std::string name() {
    if (eof() || !is_name_start(peek())) fail("expected a name");
    auto begin = pos_;
    while (!eof() && is_name_char(peek())) advance();
    return std::string(src_.substr(begin, pos_ - begin));
  }

  void reference(std::string& out) {
    auto at = here();
    advance();  // '&'
    auto semi = src_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10) fail_at(at, "unterminated entity reference");
    std::string_view ref = src_.substr(pos_, semi - pos_);
    if (ref == "lt") {
      out += '<';
    } else if (ref == "gt") {
      out += '>';
    } else if (ref == "amp") {
      out += '&';
    } else if (ref == "quot") {
      out += '"';
    } else if (ref == "apos") {
      out += '\'';
    } else if (ref.starts_with("#")) {
      std::uint32_t cp = 0;
      bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail_at(at, "empty character reference");
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else {
          fail_at(at, "bad character reference");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) fail_at(at, "character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail_at(at, "unknown entity '&" + std::string(ref) + ";'");
    }
    advance(semi + 1 - pos_);
  }

  Attribute attribute() {
    Attribute a;
    a.location = here();
    a.name = name();
    skip_space();
    expect("=");
    skip_space();
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
    advance();
    while (!eof() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        reference(a.value);
      } else {
        a.value += peek();
        advance();
      }
    }
    if (eof()) fail("unterminated attribute value");
    advance();
    return a;
  }

  Element element() {
    Element e;
    e.location = here();
    expect("<");
    e.name = name();
    for (;;) {
      bool spaced = !eof() && is_space(peek());
      skip_space();
      if (starts_with("/>")) {
        advance(2);
        return e;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!spaced) fail("expected whitespace before attribute");
      auto attr = attribute();
      if (e.find_attribute(attr.name)) fail_at(attr.location, "duplicate attribute '" + attr.name + "'");
      e.attributes.push_back(std::move(attr));
    }
    content(e);
    return e;
  }

  void content(Element& e) {
    Text pending;
    auto flush = [&] {
      if (!pending.value.empty()) e.children.emplace_back(std::move(pending));
      pending = Text{};
    };
    for (;;) {
      if (eof()) fail_at(e.location, "element <" + e.name + "> is not closed");
      if (starts_with("</")) {
        flush();
        auto at = here();
        advance(2);
        auto closing = name();
        if (closing != e.name) fail_at(at, "mismatched closing tag </" + closing + "> for <" + e.name + ">");
        skip_space();
        expect(">");
        return;
      }
      if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<![CDATA[")) {
        flush();
        Text t;
        t.location = here();
        t.cdata = true;
        advance(9);
        auto end = src_.find("]]>", pos_);
        if (end == std::string_view::npos) fail_at(t.location, "unterminated CDATA section");
        t.value = std::string(src_.substr(pos_, end - pos_));
        advance(end + 3 - pos_);
        e.children.emplace_back(std::move(t));
      } else if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (peek() == '<') {
        flush();
        e.children.emplace_back(element());
      } else {
        if (pending.value.empty()) pending.location = here();
        if (peek() == '&') {
          reference(pending.value);
        } else {
          pending.value += peek();
          advance();
        }
      }
    }
  }
};

bool blank(std::string_view s) {
  for (char c : s) {
    if (!is_space(c)) return false;
  }
  return true;
}

}  // namespace

Document parse(std::string_view source) { return Reader(source).run(); }

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write(std::string& out, const Element& element, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent;
  out += '<';
  out += element.name;
  for (const auto& a : element.attributes) {
    out += ' ';
    out += a.name;
    out += "=\"";
    out += escape(a.value);
    out += '"';
  }
  std::vector<const Node*> kept;
  bool has_elements = false;
  for (const auto& child : element.children) {
    if (const auto* t = std::get_if<Text>(&child); t && blank(t->value)) continue;
    if (std::holds_alternative<Element>(child)) has_elements = true;
    kept.push_back(&child);
  }
  if (kept.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (!has_elements) {
    for (const auto* child : kept) out += escape(std::get<Text>(*child).value);
    out += "</" + element.name + ">\n";
    return;
  }
  out += '\n';
  for (const auto* child : kept) {
    if (const auto* e = std::get_if<Element>(child)) {
      write(out, *e, depth + 1);
    } else {
      out += indent + "  " + escape(std::get<Text>(*child).value) + "\n";
    }
  }
  out += indent + "</" + element.name + ">\n";
}

}  // namespace uiml::xml

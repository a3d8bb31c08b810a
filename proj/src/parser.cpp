#include "knowforge/parser.hpp"

#include <cctype>
#include <optional>
#include <variant>

namespace knowforge {

namespace {

enum class TokKind { Ident, String, LParen, RParen, LBracket, RBracket, Comma, Equals, Junk, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;  // idents: name; strings: unescaped value
  std::size_t begin = 0;
  std::size_t end = 0;
  bool unterminated = false;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    Token tok;
    tok.begin = i;
    if (c == '"') {
      tok.kind = TokKind::String;
      ++i;
      while (i < n && text[i] != '"' && text[i] != '\n') {
        if (text[i] == '\\' && i + 1 < n && (text[i + 1] == '"' || text[i + 1] == '\\')) {
          tok.text.push_back(text[i + 1]);
          i += 2;
        } else {
          tok.text.push_back(text[i]);
          ++i;
        }
      }
      if (i < n && text[i] == '"') {
        ++i;
      } else {
        tok.unterminated = true;
      }
      tok.end = i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = TokKind::Ident;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.text.push_back(text[i]);
        ++i;
      }
      tok.end = i;
    } else {
      switch (c) {
        case '(': tok.kind = TokKind::LParen; break;
        case ')': tok.kind = TokKind::RParen; break;
        case '[': tok.kind = TokKind::LBracket; break;
        case ']': tok.kind = TokKind::RBracket; break;
        case ',': tok.kind = TokKind::Comma; break;
        case '=': tok.kind = TokKind::Equals; break;
        default: tok.kind = TokKind::Junk; break;
      }
      ++i;
      tok.end = i;
    }
    out.push_back(std::move(tok));
  }
  Token end_tok;
  end_tok.kind = TokKind::End;
  end_tok.begin = end_tok.end = n;
  out.push_back(end_tok);
  return out;
}

struct Call;

struct CallArg {
  std::optional<std::string> keyword;
  // Exactly one of the three is set.
  std::optional<std::string> string_value;
  std::vector<Call> call_value;        // single nested constructor (size 1)
  std::vector<Call> list_value;        // [A(...), B(...)]
  bool is_list = false;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Call {
  std::string name;
  std::vector<CallArg> args;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const SchemaLibrary& library,
         const DatasetSchema* dataset, std::size_t text_size)
      : tokens_(std::move(tokens)), library_(library), dataset_(dataset),
        text_size_(text_size) {}

  ParseOutcome run() {
    ParseOutcome outcome;
    const std::size_t list_open = find_last_results_assignment();
    if (list_open == npos) {
      outcome.found_results = false;
      outcome.diagnostics.push_back({Severity::Error,
                                     "NoResultsBlock: no `results = [...]` assignment found",
                                     0, text_size_});
      return outcome;
    }
    outcome.found_results = true;
    pos_ = list_open + 1;  // token after '['
    parse_list_elements(outcome);
    return outcome;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const Token& at(std::size_t i) const {
    return tokens_[i < tokens_.size() ? i : tokens_.size() - 1];
  }
  const Token& cur() const { return at(pos_); }

  std::size_t find_last_results_assignment() const {
    std::size_t found = npos;
    for (std::size_t i = 0; i + 2 < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokKind::Ident && tokens_[i].text == "results" &&
          tokens_[i + 1].kind == TokKind::Equals &&
          tokens_[i + 2].kind == TokKind::LBracket) {
        found = i + 2;
      }
    }
    return found;
  }

  void parse_list_elements(ParseOutcome& outcome) {
    bool expect_element = true;
    while (true) {
      const Token& t = cur();
      if (t.kind == TokKind::End) {
        outcome.diagnostics.push_back({Severity::Error,
                                       "unterminated results list", t.begin, t.end});
        return;
      }
      if (t.kind == TokKind::RBracket) {
        ++pos_;  // text after the matching bracket is ignored
        return;
      }
      if (t.kind == TokKind::Comma) {
        ++pos_;  // tolerate stray / trailing commas
        expect_element = true;
        continue;
      }
      (void)expect_element;
      const std::size_t elem_begin = t.begin;
      const std::size_t pos_before = pos_;
      auto call = parse_call();
      if (call) {
        auto extraction = interpret(*call, outcome.diagnostics);
        if (extraction) outcome.extractions.push_back(std::move(*extraction));
      } else {
        std::size_t elem_end = skip_to_next_element();
        if (pos_ == pos_before) {  // stray closer: consume it or loop forever
          elem_end = cur().end;
          ++pos_;
        }
        outcome.diagnostics.push_back({Severity::Error, "malformed element",
                                       elem_begin, elem_end});
      }
      expect_element = false;
    }
  }

  // After a malformed element: advance to the next comma at list depth, or
  // stop before the list's closing bracket, so well-formed siblings parse.
  std::size_t skip_to_next_element() {
    int depth = 0;
    std::size_t last_end = cur().begin;
    while (true) {
      const Token& t = cur();
      if (t.kind == TokKind::End) return last_end;
      if (depth == 0 && (t.kind == TokKind::Comma || t.kind == TokKind::RBracket)) {
        return last_end;
      }
      if (t.kind == TokKind::LParen || t.kind == TokKind::LBracket) ++depth;
      if (t.kind == TokKind::RParen || t.kind == TokKind::RBracket) {
        if (depth == 0) return last_end;  // stray closer ends the element
        --depth;
      }
      last_end = t.end;
      ++pos_;
    }
  }

  std::optional<Call> parse_call() {
    if (cur().kind != TokKind::Ident) return std::nullopt;
    Call call;
    call.name = cur().text;
    call.begin = cur().begin;
    ++pos_;
    if (cur().kind != TokKind::LParen) return std::nullopt;
    ++pos_;
    bool first = true;
    while (true) {
      if (cur().kind == TokKind::RParen) {
        call.end = cur().end;
        ++pos_;
        return call;
      }
      if (cur().kind == TokKind::End) return std::nullopt;
      if (!first) {
        if (cur().kind != TokKind::Comma) return std::nullopt;
        ++pos_;
        if (cur().kind == TokKind::RParen) {  // trailing comma
          call.end = cur().end;
          ++pos_;
          return call;
        }
      }
      auto arg = parse_arg();
      if (!arg) return std::nullopt;
      call.args.push_back(std::move(*arg));
      first = false;
    }
  }

  std::optional<CallArg> parse_arg() {
    CallArg arg;
    arg.begin = cur().begin;
    if (cur().kind == TokKind::Ident && at(pos_ + 1).kind == TokKind::Equals) {
      arg.keyword = cur().text;
      pos_ += 2;
    }
    const Token& t = cur();
    if (t.kind == TokKind::String) {
      if (t.unterminated) return std::nullopt;
      arg.string_value = t.text;
      arg.end = t.end;
      ++pos_;
      return arg;
    }
    if (t.kind == TokKind::Ident) {
      auto nested = parse_call();
      if (!nested) return std::nullopt;
      arg.end = nested->end;
      arg.call_value.push_back(std::move(*nested));
      return arg;
    }
    if (t.kind == TokKind::LBracket) {
      ++pos_;
      arg.is_list = true;
      bool first = true;
      while (true) {
        if (cur().kind == TokKind::RBracket) {
          arg.end = cur().end;
          ++pos_;
          return arg;
        }
        if (cur().kind == TokKind::End) return std::nullopt;
        if (!first) {
          if (cur().kind != TokKind::Comma) return std::nullopt;
          ++pos_;
          if (cur().kind == TokKind::RBracket) {
            arg.end = cur().end;
            ++pos_;
            return arg;
          }
        }
        if (cur().kind == TokKind::String) {
          // Not in the grammar, but cheap to accept: a bare string inside a
          // role list is read as an untyped entity mention.
          if (cur().unterminated) return std::nullopt;
          Call pseudo;
          pseudo.name = kBasicEntity;
          pseudo.begin = cur().begin;
          pseudo.end = cur().end;
          CallArg sp;
          sp.string_value = cur().text;
          sp.begin = cur().begin;
          sp.end = cur().end;
          pseudo.args.push_back(std::move(sp));
          arg.list_value.push_back(std::move(pseudo));
          ++pos_;
        } else {
          auto item = parse_call();
          if (!item) return std::nullopt;
          arg.list_value.push_back(std::move(*item));
        }
        first = false;
      }
    }
    return std::nullopt;
  }

  const Concept* resolve(const std::string& name) const {
    if (const Concept* c = library_.find_by_class_name(name)) return c;
    if (dataset_ != nullptr) {
      auto it = dataset_->name_alignment.find(name);
      if (it != dataset_->name_alignment.end()) return library_.find(it->second);
    }
    return nullptr;
  }

  std::optional<Extraction> interpret(const Call& call, std::vector<Diagnostic>& diags) {
    const Concept* resolved = resolve(call.name);
    if (resolved != nullptr) {
      switch (resolved->kind) {
        case ConceptKind::Entity: return interpret_entity(call, resolved->id, false, diags);
        case ConceptKind::Relation: return interpret_relation(call, resolved->id, false, diags);
        case ConceptKind::Event: return interpret_event(call, resolved->id, false, diags);
      }
    }
    // Unknown class: infer the shape and keep it as a provisional extraction.
    bool has_keyword_or_list = false;
    std::size_t positional_calls = 0;
    std::size_t strings = 0;
    for (const auto& arg : call.args) {
      if (arg.keyword || arg.is_list) has_keyword_or_list = true;
      if (!arg.keyword && !arg.call_value.empty()) ++positional_calls;
      if (arg.string_value) ++strings;
    }
    if (has_keyword_or_list) return interpret_event(call, call.name, true, diags);
    if (positional_calls >= 2) return interpret_relation(call, call.name, true, diags);
    if (strings >= 1) return interpret_entity(call, call.name, true, diags);
    diags.push_back({Severity::Error,
                     "cannot infer a structure for " + call.name + "(...)",
                     call.begin, call.end});
    return std::nullopt;
  }

  std::optional<Extraction> interpret_entity(const Call& call, const ConceptId& concept_id,
                                             bool provisional,
                                             std::vector<Diagnostic>& diags) {
    const std::string* span = nullptr;
    for (const auto& arg : call.args) {
      if (arg.string_value && (!arg.keyword || *arg.keyword == "name")) {
        span = &*arg.string_value;
        break;
      }
    }
    if (span == nullptr) {
      diags.push_back({Severity::Error, call.name + ": entity without a mention string",
                       call.begin, call.end});
      return std::nullopt;
    }
    if (call.args.size() > 1) {
      diags.push_back({Severity::Warning, call.name + ": extra entity arguments ignored",
                       call.begin, call.end});
    }
    Extraction e = make_entity(concept_id, *span);
    e.provisional = provisional;
    return e;
  }

  // A relation endpoint: a nested constructor, or a bare string read as an
  // untyped entity.
  std::optional<Extraction> endpoint_entity(const CallArg& arg,
                                            std::vector<Diagnostic>& diags) {
    if (arg.string_value) return make_entity(kBasicEntity, *arg.string_value);
    if (!arg.call_value.empty()) {
      auto nested = interpret(arg.call_value.front(), diags);
      if (nested && nested->kind == ConceptKind::Entity) return nested;
      diags.push_back({Severity::Error, "relation endpoint is not an entity",
                       arg.begin, arg.end});
    }
    return std::nullopt;
  }

  std::optional<Extraction> interpret_relation(const Call& call, const ConceptId& concept_id,
                                               bool provisional,
                                               std::vector<Diagnostic>& diags) {
    std::optional<Extraction> head, tail;
    std::size_t positional = 0;
    for (const auto& arg : call.args) {
      std::optional<Extraction>* slot = nullptr;
      if (arg.keyword == "head_entity") {
        slot = &head;
      } else if (arg.keyword == "tail_entity") {
        slot = &tail;
      } else if (!arg.keyword) {
        slot = positional == 0 ? &head : positional == 1 ? &tail : nullptr;
        ++positional;
      }
      if (slot == nullptr) {
        diags.push_back({Severity::Warning, call.name + ": extra relation argument ignored",
                         arg.begin, arg.end});
        continue;
      }
      *slot = endpoint_entity(arg, diags);
    }
    if (!head || !tail) {
      diags.push_back({Severity::Error, call.name + ": relation needs head and tail entities",
                       call.begin, call.end});
      return std::nullopt;
    }
    Extraction e = make_relation(concept_id, std::move(*head), std::move(*tail));
    e.provisional = provisional;
    return e;
  }

  std::optional<Extraction> interpret_event(const Call& call, const ConceptId& concept_id,
                                            bool provisional,
                                            std::vector<Diagnostic>& diags) {
    std::optional<std::string> trigger;
    std::vector<RoleFill> roles;
    bool saw_positional_trigger = false;
    for (const auto& arg : call.args) {
      if (!arg.keyword) {
        if (arg.string_value && !saw_positional_trigger && !trigger) {
          trigger = *arg.string_value;
          saw_positional_trigger = true;
        } else {
          diags.push_back({Severity::Warning, call.name + ": positional event argument ignored",
                           arg.begin, arg.end});
        }
        continue;
      }
      if (*arg.keyword == "trigger") {
        if (arg.string_value) {
          trigger = *arg.string_value;
        } else {
          diags.push_back({Severity::Warning, call.name + ": trigger must be a string",
                           arg.begin, arg.end});
        }
        continue;
      }
      if (!arg.is_list) {
        diags.push_back({Severity::Warning,
                         call.name + ": role '" + *arg.keyword + "' value must be a list",
                         arg.begin, arg.end});
        continue;
      }
      RoleFill fill;
      fill.role = *arg.keyword;
      for (const auto& item : arg.list_value) {
        auto value = interpret(item, diags);
        if (value && value->kind == ConceptKind::Entity) {
          fill.values.push_back(std::move(*value));
        } else {
          diags.push_back({Severity::Warning,
                           call.name + ": role '" + fill.role + "' argument is not an entity",
                           item.begin, item.end});
        }
      }
      roles.push_back(std::move(fill));
    }
    Extraction e = make_event(concept_id, std::move(trigger), std::move(roles));
    e.provisional = provisional;
    return e;
  }

  std::vector<Token> tokens_;
  const SchemaLibrary& library_;
  const DatasetSchema* dataset_;
  std::size_t text_size_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseOutcome parse_results(std::string_view text, const SchemaLibrary& library,
                           const DatasetSchema* dataset) {
  Parser parser(lex(text), library, dataset, text.size());
  return parser.run();
}

}  // namespace knowforge

#include "forge/bpe/io.hpp"

#include <unordered_set>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::bpe {

std::string serialize_vocab(const Vocabulary& vocab) {
  std::string out(kFileHeader);
  out += '\n';
  for (const Token& t : vocab.tokens()) {
    out += text::escape_bytes(t.bytes);
    out += '\t';
    out += text::format_double(t.score);
    out += '\n';
  }
  return out;
}

std::string serialize_merges(const Vocabulary& vocab, const MergeRuleList& merges) {
  std::string out(kFileHeader);
  out += '\n';
  for (const MergeRule& r : merges.rules()) {
    out += text::escape_bytes(vocab.at(r.left).bytes);
    out += ' ';
    out += text::escape_bytes(vocab.at(r.right).bytes);
    out += '\n';
  }
  return out;
}

namespace {

void expect_header(const std::vector<std::string>& lines, const std::string& source) {
  if (lines.empty() || lines[0] != kFileHeader) {
    throw ParseError(source, 1, "expected header " + std::string(kFileHeader));
  }
}

}  // namespace

Vocabulary parse_vocab(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  expect_header(lines, source);
  std::vector<Token> tokens;
  tokens.reserve(lines.size() - 1);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = text::split(lines[i], '\t');
    if (lines[i].empty()) {
      throw ParseError(source, line_no,
                       "missing token for id " + std::to_string(i - 1) + " (ids must be dense)");
    }
    if (fields.size() != 2) throw ParseError(source, line_no, "expected <token>\\t<score>");
    auto bytes = text::unescape_bytes(fields[0]);
    if (!bytes) throw ParseError(source, line_no, "malformed \\x escape");
    if (bytes->empty()) {
      throw ParseError(source, line_no,
                       "missing token for id " + std::to_string(i - 1) + " (ids must be dense)");
    }
    auto score = text::parse_double(fields[1]);
    if (!score) throw ParseError(source, line_no, "malformed score");
    if (!seen.insert(*bytes).second) throw ParseError(source, line_no, "duplicate token bytes");
    tokens.push_back(Token{std::move(*bytes), *score, TokenKind::normal});
  }
  try {
    return Vocabulary::from_tokens(std::move(tokens));
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(source, lines.size(), e.what());
  }
}

MergeRuleList parse_merges(std::string_view content, const Vocabulary& vocab, const std::string& source) {
  const auto lines = text::split_lines(content);
  expect_header(lines, source);
  std::vector<MergeRule> rules;
  rules.reserve(lines.size() - 1);
  std::unordered_set<std::uint64_t> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = text::split(lines[i], ' ');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected <left> <right>");
    auto left = text::unescape_bytes(fields[0]);
    auto right = text::unescape_bytes(fields[1]);
    if (!left || !right) throw ParseError(source, line_no, "malformed \\x escape");
    auto l = vocab.find_normal(*left);
    auto r = vocab.find_normal(*right);
    if (!l || !r) throw ParseError(source, line_no, "operand is not a normal vocabulary token");
    auto res = vocab.find_normal(*left + *right);
    if (!res) throw ParseError(source, line_no, "merge result is not in the vocabulary");
    if (!pairs.insert((static_cast<std::uint64_t>(*l) << 32) | *r).second) {
      throw ParseError(source, line_no, "duplicate merge pair");
    }
    rules.push_back(MergeRule{*l, *r, *res});
  }
  return MergeRuleList::create(vocab, std::move(rules));
}

std::filesystem::path merges_path_for(const std::filesystem::path& vocab_path) {
  return std::filesystem::path(vocab_path.string() + ".merges");
}

void save_tokenizer(const Tokenizer& tok, const std::filesystem::path& vocab_path,
                    const std::filesystem::path& merges_path) {
  text::write_file(vocab_path, serialize_vocab(tok.vocab()));
  text::write_file(merges_path, serialize_merges(tok.vocab(), tok.merges()));
}

void save_tokenizer(const Tokenizer& tok, const std::filesystem::path& vocab_path) {
  save_tokenizer(tok, vocab_path, merges_path_for(vocab_path));
}

Tokenizer load_tokenizer(const std::filesystem::path& vocab_path, const std::filesystem::path& merges_path) {
  Vocabulary vocab = parse_vocab(text::read_file(vocab_path), vocab_path.string());
  MergeRuleList merges = parse_merges(text::read_file(merges_path), vocab, merges_path.string());
  return Tokenizer(std::move(vocab), std::move(merges));
}

Tokenizer load_tokenizer(const std::filesystem::path& vocab_path) {
  return load_tokenizer(vocab_path, merges_path_for(vocab_path));
}

}  // namespace forge::bpe

#include "maf/newick.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace maf {

namespace {

bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LabeledTree parse() {
    skip_ws();
    NodeId root = parse_node();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ';') {
      fail("expected ';' terminator");
    }
    ++pos_;
    skip_ws();
    if (pos_ != text_.size()) fail("trailing content after ';'");
    return builder_.finish(root);
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    std::ostringstream os;
    os << "malformed newick at offset " << pos_ << ": " << why;
    throw MalformedNewick(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  NodeId parse_node() {
    skip_ws();
    NodeId id;
    if (peek() == '(') {
      ++pos_;
      NodeId left = parse_node();
      skip_ws();
      if (peek() == ')') fail("node with a single child");
      if (peek() != ',') fail("expected ','");
      ++pos_;
      NodeId right = parse_node();
      skip_ws();
      if (peek() == ',') fail("node with more than two children");
      if (peek() != ')') fail("unbalanced parentheses");
      ++pos_;
      skip_ws();
      if (is_label_char(peek())) {
        fail("internal node labels are not supported");
      }
      id = builder_.add_internal(left, right);
    } else {
      std::string label = parse_label();
      if (label.empty()) fail("expected a leaf label");
      id = builder_.add_leaf(std::move(label));
    }
    skip_ws();
    if (peek() == ':') {  // branch length: parse and discard
      ++pos_;
      parse_number();
    }
    return id;
  }

  std::string parse_label() {
    std::string label;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) {
      label.push_back(text_[pos_++]);
    }
    return label;
  }

  void parse_number() {
    size_t start = pos_;
    auto digit = [&] {
      return pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]));
    };
    if (peek() == '+' || peek() == '-') ++pos_;
    while (digit()) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (digit()) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      while (digit()) ++pos_;
    }
    if (pos_ == start) fail("expected a branch length after ':'");
  }

  std::string_view text_;
  size_t pos_ = 0;
  TreeBuilder builder_;
};

void write_node(const LabeledTree& t, NodeId id, std::string& out) {
  const TreeNode& n = t.node(id);
  if (n.left == kNoNode) {
    out += n.label;
    return;
  }
  out.push_back('(');
  write_node(t, n.left, out);
  out.push_back(',');
  write_node(t, n.right, out);
  out.push_back(')');
}

}  // namespace

LabeledTree parse_newick(std::string_view text) { return Parser(text).parse(); }

std::string write_newick(const LabeledTree& tree) {
  std::string out;
  write_node(tree, tree.root(), out);
  out.push_back(';');
  return out;
}

LabeledTree read_newick_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedNewick("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_newick(buf.str());
  } catch (const Error& e) {
    throw MalformedNewick(path + ": " + e.what());
  }
}

void write_newick_file(const LabeledTree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << write_newick(tree) << "\n";
}

}  // namespace maf

#pragma once

#include <string>
#include <vector>

#include "tangle/stateio.hpp"

namespace tangle::cli {

// Tiny canonical JSON emitter: insertion order preserved, two-space indent,
// doubles at 17 significant digits. Reports built through this writer are
// byte-stable across runs.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{', '}'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('[', ']'); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& name) {
    separator();
    out_ += quote(name) + ": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return scalar(format_double(v)); }
  JsonWriter& value(int v) { return scalar(std::to_string(v)); }
  JsonWriter& value(long long v) { return scalar(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return scalar(std::to_string(v)); }
  JsonWriter& value(bool v) { return scalar(v ? "true" : "false"); }
  JsonWriter& value(const char* v) { return scalar(quote(v)); }
  JsonWriter& value(const std::string& v) { return scalar(quote(v)); }

  std::string str() const { return out_ + "\n"; }

 private:
  static std::string quote(const std::string& text) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }

  void separator() {
    if (pending_key_) return;
    if (!stack_.empty()) {
      if (counts_.back() > 0) out_ += ',';
      out_ += '\n';
      out_.append(2 * stack_.size(), ' ');
      ++counts_.back();
    }
  }

  JsonWriter& open(char opener, char) {
    separator();
    pending_key_ = false;
    out_ += opener;
    stack_.push_back(opener);
    counts_.push_back(0);
    return *this;
  }

  JsonWriter& close(char closer) {
    const bool had_items = counts_.back() > 0;
    stack_.pop_back();
    counts_.pop_back();
    if (had_items) {
      out_ += '\n';
      out_.append(2 * stack_.size(), ' ');
    }
    out_ += closer;
    return *this;
  }

  JsonWriter& scalar(const std::string& text) {
    separator();
    pending_key_ = false;
    out_ += text;
    return *this;
  }

  std::string out_;
  std::vector<char> stack_;
  std::vector<int> counts_;
  bool pending_key_ = false;
};

}  // namespace tangle::cli

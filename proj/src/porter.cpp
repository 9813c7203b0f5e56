// Copyright 2026 The kforge Authors.
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

#include "kforge/porter.hpp"

#include <functional>
#include <map>
#include <vector>

namespace kforge {
namespace {

using Condition = std::function<bool(const std::string&)>;

struct Rule {
  std::string_view suffix;
  std::string replacement;
  Condition condition;
};

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// 'y' is a consonant at the start of a word or after a vowel.
std::vector<bool> consonant_flags(std::string_view w) {
  std::vector<bool> flags(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel(w[i])) {
      flags[i] = false;
    } else if (w[i] == 'y') {
      flags[i] = i == 0 ? true : !flags[i - 1];
    } else {
      flags[i] = true;
    }
  }
  return flags;
}

bool is_consonant(std::string_view w, std::size_t i) {
  return consonant_flags(w.substr(0, i + 1))[i];
}

int measure(std::string_view stem) {
  std::vector<bool> f = consonant_flags(stem);
  int m = 0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (!f[i - 1] && f[i]) ++m;
  }
  return m;
}

bool positive_measure(const std::string& stem) { return measure(stem) > 0; }

bool contains_vowel(std::string_view stem) {
  for (bool c : consonant_flags(stem)) {
    if (!c) return true;
  }
  return false;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

bool ends_double_consonant(std::string_view w) {
  return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
         is_consonant(w, w.size() - 1);
}

bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n >= 3 && is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
      is_consonant(w, n - 1) && w[n - 1] != 'w' && w[n - 1] != 'x' &&
      w[n - 1] != 'y') {
    return true;
  }
  return n == 2 && !is_consonant(w, 0) && is_consonant(w, 1);
}

std::string strip(std::string_view w, std::string_view suffix) {
  return std::string(w.substr(0, w.size() - suffix.size()));
}

// The first rule whose suffix matches decides: it applies if its condition
// holds, otherwise the word is returned unchanged. "*d" matches a double
// consonant ending and removes both letters before the replacement.
std::string apply_rules(const std::string& word, const std::vector<Rule>& rules) {
  for (const Rule& r : rules) {
    if (r.suffix == "*d") {
      if (!ends_double_consonant(word)) continue;
      std::string stem = word.substr(0, word.size() - 2);
      if (!r.condition || r.condition(stem)) return stem + r.replacement;
      return word;
    }
    if (ends_with(word, r.suffix)) {
      std::string stem = strip(word, r.suffix);
      if (!r.condition || r.condition(stem)) return stem + r.replacement;
      return word;
    }
  }
  return word;
}

std::string step1a(const std::string& w) {
  if (ends_with(w, "ies") && w.size() == 4) return strip(w, "ies") + "ie";
  return apply_rules(w, {{"sses", "ss", nullptr},
                         {"ies", "i", nullptr},
                         {"ss", "ss", nullptr},
                         {"s", "", nullptr}});
}

std::string step1b(const std::string& w) {
  if (ends_with(w, "ied")) {
    return strip(w, "ied") + (w.size() == 4 ? "ie" : "i");
  }
  if (ends_with(w, "eed")) {
    std::string stem = strip(w, "eed");
    return measure(stem) > 0 ? stem + "ee" : w;
  }
  std::string stem;
  bool stripped = false;
  for (std::string_view suffix : {"ed", "ing"}) {
    if (ends_with(w, suffix)) {
      stem = strip(w, suffix);
      if (contains_vowel(stem)) {
        stripped = true;
        break;
      }
    }
  }
  if (!stripped) return w;
  const char last = stem.back();
  return apply_rules(
      stem, {{"at", "ate", nullptr},
             {"bl", "ble", nullptr},
             {"iz", "ize", nullptr},
             {"*d", std::string(1, last),
              [last](const std::string&) {
                return last != 'l' && last != 's' && last != 'z';
              }},
             {"", "e", [](const std::string& s) {
                return measure(s) == 1 && ends_cvc(s);
              }}});
}

std::string step1c(const std::string& w) {
  return apply_rules(w, {{"y", "i", [](const std::string& s) {
                            return s.size() > 1 &&
                                   is_consonant(s, s.size() - 1);
                          }}});
}

std::string step2(const std::string& w) {
  if (ends_with(w, "alli") && positive_measure(strip(w, "alli"))) {
    return step2(strip(w, "alli") + "al");
  }
  const Condition pm = positive_measure;
  return apply_rules(
      w, {{"ational", "ate", pm}, {"tional", "tion", pm},
          {"enci", "ence", pm},   {"anci", "ance", pm},
          {"izer", "ize", pm},    {"bli", "ble", pm},
          {"alli", "al", pm},     {"entli", "ent", pm},
          {"eli", "e", pm},       {"ousli", "ous", pm},
          {"ization", "ize", pm}, {"ation", "ate", pm},
          {"ator", "ate", pm},    {"alism", "al", pm},
          {"iveness", "ive", pm}, {"fulness", "ful", pm},
          {"ousness", "ous", pm}, {"aliti", "al", pm},
          {"iviti", "ive", pm},   {"biliti", "ble", pm},
          {"fulli", "ful", pm},
          {"logi", "log", [&w](const std::string&) {
             return positive_measure(w.substr(0, w.size() - 3));
           }}});
}

std::string step3(const std::string& w) {
  const Condition pm = positive_measure;
  return apply_rules(w, {{"icate", "ic", pm},
                         {"ative", "", pm},
                         {"alize", "al", pm},
                         {"iciti", "ic", pm},
                         {"ical", "ic", pm},
                         {"ful", "", pm},
                         {"ness", "", pm}});
}

std::string step4(const std::string& w) {
  const Condition gt1 = [](const std::string& s) { return measure(s) > 1; };
  return apply_rules(
      w, {{"al", "", gt1},    {"ance", "", gt1}, {"ence", "", gt1},
          {"er", "", gt1},    {"ic", "", gt1},   {"able", "", gt1},
          {"ible", "", gt1},  {"ant", "", gt1},  {"ement", "", gt1},
          {"ment", "", gt1},  {"ent", "", gt1},
          {"ion", "", [](const std::string& s) {
             return measure(s) > 1 && (s.back() == 's' || s.back() == 't');
           }},
          {"ou", "", gt1},    {"ism", "", gt1},  {"ate", "", gt1},
          {"iti", "", gt1},   {"ous", "", gt1},  {"ive", "", gt1},
          {"ize", "", gt1}});
}

std::string step5a(const std::string& w) {
  if (ends_with(w, "e")) {
    std::string stem = strip(w, "e");
    int m = measure(stem);
    if (m > 1) return stem;
    if (m == 1 && !ends_cvc(stem)) return stem;
  }
  return w;
}

std::string step5b(const std::string& w) {
  return apply_rules(w, {{"ll", "l", [&w](const std::string&) {
                            return measure(w.substr(0, w.size() - 1)) > 1;
                          }}});
}

const std::map<std::string, std::string, std::less<>>& irregular_forms() {
  static const std::map<std::string, std::string, std::less<>> kPool = {
      {"sky", "sky"},         {"skies", "sky"},     {"dying", "die"},
      {"lying", "lie"},       {"tying", "tie"},     {"news", "news"},
      {"innings", "inning"},  {"inning", "inning"}, {"outings", "outing"},
      {"outing", "outing"},   {"cannings", "canning"},
      {"canning", "canning"}, {"howe", "howe"},     {"proceed", "proceed"},
      {"exceed", "exceed"},   {"succeed", "succeed"}};
  return kPool;
}

}  // namespace

std::string porter_stem(std::string_view word) {
  const auto& pool = irregular_forms();
  if (auto it = pool.find(word); it != pool.end()) return it->second;
  std::string w(word);
  if (w.size() <= 2) return w;
  w = step1a(w);
  w = step1b(w);
  w = step1c(w);
  w = step2(w);
  w = step3(w);
  w = step4(w);
  w = step5a(w);
  w = step5b(w);
  return w;
}

}  // namespace kforge

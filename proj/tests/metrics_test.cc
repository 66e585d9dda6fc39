// Copyright 2026 The kgmine Authors.
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


#include <algorithm>

#include "doctest.h"
#include "kgmine/errors.h"
#include "kgmine/metrics.h"
#include "testing.h"

namespace kgmine {
namespace {

using testing::MakeTuple;

SupportSet Support(const std::string &h, const std::string &r, const std::string &t,
                   const std::string &graph) {
  SupportSet s;
  s.head = h;
  s.relation = r;
  s.tail = t;
  s.supports.insert({graph, "H0|T0;T0-nsubj->H0"});
  return s;
}

TEST_CASE("novelty ratios") {
  SeedKB seed({MakeTuple("s0", "R", "o0"), MakeTuple("s1", "R", "o1"), MakeTuple("s2", "R", "o2"),
               MakeTuple("s3", "R", "o3"), MakeTuple("s4", "R", "o4"), MakeTuple("s5", "R", "o5"),
               MakeTuple("s6", "R", "o6")});
  std::vector<TupleText> cands;
  for (int i = 0; i < 7; ++i) cands.push_back({"s" + std::to_string(i), "R", "o" + std::to_string(i)});
  NoveltyReport none = Novelty(cands, seed);
  CHECK(none.novel_t == 0.0);
  CHECK(none.novel_c == 0.0);

  // Same strings under a different relation are novel tuples.
  cands.push_back({"s0", "IsA", "o1"});
  cands.push_back({"s1", "R", "o2"});
  cands.push_back({"s2", "R", "o0"});
  NoveltyReport three = Novelty(cands, seed);
  CHECK(three.tuple_count == 10);
  CHECK(three.novel_tuple_count == 3);
  CHECK(three.novel_t == 0.3);
  CHECK(FormatNoveltyText(three).find("novel_t=0.3000\n") != std::string::npos);

  SeedKB small({MakeTuple("a", "R", "x")});
  NoveltyReport half = Novelty({{"a", "R", "x"}, {"b", "R", "y"}}, small);
  CHECK(half.concept_count == 4);
  CHECK(half.novel_concept_count == 2);
  CHECK(half.novel_c == 0.5);
  CHECK(FormatNoveltyText(half).find("novel_c=0.5000\n") != std::string::npos);
  CHECK(FormatNoveltyJson(half).find("\"novel_c_display\": \"0.5000\"") != std::string::npos);

  NoveltyReport empty = Novelty({}, small);
  CHECK(empty.novel_t == 0.0);
  CHECK(empty.tuple_count == 0);
}

TEST_CASE("novelty vocabulary and monotonicity") {
  SeedKB seed({MakeTuple("ice cream", "HasProperty", "cold")});
  NoveltyReport r = Novelty({{"ice cream", "HasProperty", "cold"}, {"hot dog", "IsA", "food"}}, seed);
  CHECK(r.vocab_count == 6);
  CHECK(r.concept_count == 4);

  // Adding a seed tuple never raises the novel numerator.
  std::vector<TupleText> base = {{"dog", "R", "bark"}, {"x", "R", "y"}};
  SeedKB kb({MakeTuple("x", "R", "y")});
  long before = Novelty(base, kb).novel_tuple_count;
  base.push_back({"x", "R", "y"});
  CHECK(Novelty(base, kb).novel_tuple_count <= before);
}

TEST_CASE("sample_for_annotation") {
  std::vector<SupportSet> seven;
  for (int i = 0; i < 7; ++i) seven.push_back(Support("h" + std::to_string(i), "DefinedAs", "t", "g" + std::to_string(i)));
  std::vector<AnnotationRow> all = SampleForAnnotation(seven, 1000, 1);
  CHECK(all.size() == 7);
  for (const AnnotationRow &row : all) {
    CHECK_FALSE(row.label.has_value());
    CHECK(row.graph_ids.size() == 1);
  }

  auto first = FormatAnnotationRows(SampleForAnnotation(seven, 1, 42));
  auto second = FormatAnnotationRows(SampleForAnnotation(seven, 1, 42));
  CHECK(first == second);

  std::vector<SupportSet> two = seven;
  for (int i = 0; i < 5; ++i) two.push_back(Support("a" + std::to_string(i), "CapableOf", "t", "x"));
  std::vector<AnnotationRow> grouped = SampleForAnnotation(two, 2, 3);
  REQUIRE(grouped.size() == 4);
  CHECK(grouped[0].relation == grouped[1].relation);
  CHECK(grouped[2].relation == grouped[3].relation);
  CHECK(grouped[0].relation != grouped[2].relation);

  CHECK_THROWS_AS(SampleForAnnotation(two, 0, 1), ValidationError);
}

TEST_CASE("sampling is stable under input permutation") {
  std::vector<SupportSet> cands;
  for (int i = 0; i < 30; ++i)
    cands.push_back(Support("h" + std::to_string(i), i % 3 == 0 ? "UsedFor" : "CapableOf", "t", "g"));
  std::string expected = FormatAnnotationRows(SampleForAnnotation(cands, 4, 9));
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    for (size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[rng.Below(i)]);
    CHECK(FormatAnnotationRows(SampleForAnnotation(cands, 4, 9)) == expected);
  }
  // Different seeds usually pick differently.
  CHECK(FormatAnnotationRows(SampleForAnnotation(cands, 4, 10)) != expected);
}

}  // namespace
}  // namespace kgmine

// Copyright 2026 The viperkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include <gtest/gtest.h>

#include "support.hpp"
#include "viperkit/catalog.hpp"
#include "viperkit/error.hpp"

namespace viperkit {
namespace {

LetterFeatures Features(char base, LetterCase c) { return {base, c}; }

TEST(LetterFeaturesTest, LatinAndOtherScripts) {
  EXPECT_EQ(parse_letter_features("LATIN SMALL LETTER A WITH CIRCUMFLEX"), Features('a', LetterCase::kSmall));
  EXPECT_EQ(parse_letter_features("LATIN CAPITAL LETTER A WITH RING ABOVE AND ACUTE"),
            Features('a', LetterCase::kCapital));
  EXPECT_EQ(parse_letter_features("CYRILLIC SMALL LETTER A"), Features('a', LetterCase::kSmall));
  EXPECT_EQ(parse_letter_features("CIRCLED LATIN CAPITAL LETTER W"), Features('w', LetterCase::kCapital));
}

TEST(LetterFeaturesTest, RejectsNamesWithoutSingleLetterOrCase) {
  EXPECT_FALSE(parse_letter_features("GREEK SMALL LETTER ALPHA").has_letter());
  EXPECT_FALSE(parse_letter_features("LATIN SMALL LIGATURE FF").has_letter());
  EXPECT_FALSE(parse_letter_features("DIGIT ONE").has_letter());
  EXPECT_FALSE(parse_letter_features("LATIN LETTER SMALL CAPITAL A").has_letter());
  EXPECT_FALSE(parse_letter_features("").has_letter());
}

TEST(LetterFeaturesTest, HyphenSeparatesTokens) {
  EXPECT_EQ(parse_letter_features("LATIN SMALL LETTER-A"), Features('a', LetterCase::kSmall));
}

constexpr const char* kSmallFile =
    "# comment line\n"
    "\n"
    "0000;<control>;Cc;0;BN;;;;;N;NULL;;;;\n"
    "0041;LATIN CAPITAL LETTER A;Lu;0;L;;;;;N;;;;0061;\n"
    "0061;LATIN SMALL LETTER A;Ll;0;L;;;;;N;;;0041;;0041\n"
    "00E2;LATIN SMALL LETTER A WITH CIRCUMFLEX;Ll;0;L;0061 0302;;;;N;;;00C2;;00C2\r\n"
    "4E00;<CJK Ideograph, First>;Lo;0;L;;;;;N;;;;;\n"
    "4E02;<CJK Ideograph, Last>;Lo;0;L;;;;;N;;;;;\n"
    "AC00;<Hangul Syllable, First>;Lo;0;L;;;;;N;;;;;\n"
    "AC01;<Hangul Syllable, Last>;Lo;0;L;;;;;N;;;;;\n"
    "FFFD;REPLACEMENT CHARACTER;So;0;ON;;;;;N;;;;;\n";

TEST(CatalogTest, ParsesRecordsAndRanges) {
  CatalogOptions opts;
  opts.max_codepoint = 0xFFFD;
  const Catalog c = parse_catalog(kSmallFile, opts, "digest");
  ASSERT_EQ(c.size(), 9u);  // FFFD lies above the bound
  EXPECT_EQ(c.source_digest(), "digest");

  const CharRecord* a = c.find(U'a');
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->name, "LATIN SMALL LETTER A");
  EXPECT_EQ(a->base_letter, 'a');
  EXPECT_EQ(a->letter_case, LetterCase::kSmall);
  EXPECT_TRUE(a->is_standard);
  EXPECT_TRUE(a->eligible);

  const CharRecord* circ = c.find(0xE2);
  ASSERT_NE(circ, nullptr);
  EXPECT_EQ(circ->name, "LATIN SMALL LETTER A WITH CIRCUMFLEX");
  EXPECT_FALSE(circ->is_standard);

  const CharRecord* control = c.find(0);
  ASSERT_NE(control, nullptr);
  EXPECT_FALSE(control->eligible);

  const CharRecord* cjk = c.find(0x4E01);
  ASSERT_NE(cjk, nullptr);
  EXPECT_EQ(cjk->name, "CJK UNIFIED IDEOGRAPH-4E01");
  EXPECT_TRUE(cjk->eligible);

  const CharRecord* hangul = c.find(0xAC01);
  ASSERT_NE(hangul, nullptr);
  EXPECT_FALSE(hangul->eligible);

  EXPECT_EQ(c.find(0x42), nullptr);
  EXPECT_EQ(c.find(0xFFFD), nullptr);
  EXPECT_EQ(parse_catalog(kSmallFile).size(), 7u);  // default bound 30000 drops the Hangul range
}

TEST(CatalogTest, RecordsAreSortedByCodePoint) {
  const Catalog c = parse_catalog("0062;LATIN SMALL LETTER B;;\n0061;LATIN SMALL LETTER A;;\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.records()[0].codepoint, U'a');
  EXPECT_EQ(c.records()[1].codepoint, U'b');
}

TEST(CatalogTest, MaxCodepointBoundsRanges) {
  CatalogOptions opts;
  opts.max_codepoint = 0x4E02;
  const Catalog c = parse_catalog(kSmallFile, opts);
  EXPECT_NE(c.find(0x4E01), nullptr);
  EXPECT_EQ(c.find(0x4E02), nullptr);
  EXPECT_EQ(c.find(0xAC00), nullptr);
}

TEST(CatalogTest, MalformedInputReportsLine) {
  try {
    parse_catalog("0061;LATIN SMALL LETTER A;;\nnot a record\n");
    FAIL() << "expected MalformedRecord";
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_catalog("XYZ;NAME;;\n"), MalformedRecord);
  EXPECT_THROW(parse_catalog("0061;;;\n"), MalformedRecord);
  EXPECT_THROW(parse_catalog("0061;A;;\n0061;B;;\n"), MalformedRecord);
  EXPECT_THROW(parse_catalog("4E02;<CJK Ideograph, Last>;;\n"), MalformedRecord);
  EXPECT_THROW(parse_catalog("4E00;<CJK Ideograph, First>;;\n"), MalformedRecord);
  EXPECT_THROW(parse_catalog("4E00;<CJK Ideograph, First>;;\n0061;A;;\n"), MalformedRecord);
}

TEST(CatalogTest, MissingFileThrows) {
  EXPECT_THROW(load_catalog(testing::scratch_dir() / "UnicodeData.txt"), FileNotFound);
}

TEST(CatalogTest, BundledNamesFile) {
  const Catalog& c = testing::bundled_catalog();
  EXPECT_GT(c.size(), 20000u);
  for (const CharRecord& r : c.records()) ASSERT_LT(r.codepoint, kDefaultMaxCodepoint);
  const CharRecord* cyr = c.find(0x430);
  ASSERT_NE(cyr, nullptr);
  EXPECT_EQ(cyr->name, "CYRILLIC SMALL LETTER A");
  EXPECT_EQ(cyr->base_letter, 'a');
  EXPECT_NE(c.source_digest().find("fnv1a64:"), std::string::npos);
}

}  // namespace
}  // namespace viperkit

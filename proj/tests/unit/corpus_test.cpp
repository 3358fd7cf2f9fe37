#include "oracles/line_oracle.hpp"
#include "support.hpp"
#include "vscan/corpus.hpp"
#include "vscan/digest.hpp"
#include "vscan/error.hpp"
#include "vscan/glob.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace vscan;
using vscan::testing::TempDir;
using vscan::testing::write_file;

namespace {

const LanguageProfile& cpp() { return LanguageRegistry::builtin().profile("C++"); }

std::vector<LineClass> classes(std::string_view text, const LanguageProfile& p = cpp()) {
    return classify_lines(text, p).classes;
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
        if (e.is_regular_file()) out[e.path().string()] = sha256_hex(read_file(e.path()));
    return out;
}

void five_file_tree(const std::filesystem::path& root) {
    write_file(root / "src/main.cc", "int main() {\n  return 0;\n}\n");
    write_file(root / "src/util.cc", "// helper\nint add(int a, int b) { return a + b; }\n");
    write_file(root / "app/Login.cs", "class Login {\n}\n");
    write_file(root / "app/Account.cs", "/* account */\nclass Account {}\n");
    write_file(root / "db/schema.sql", "-- schema\nCREATE TABLE t (id INT);\n");
}

}  // namespace

TEST(Glob, StarStaysWithinSegment) {
    EXPECT_TRUE(glob_match("*.sql", "a.sql"));
    EXPECT_FALSE(glob_match("*.sql", "db/a.sql"));
    EXPECT_TRUE(glob_match("**/*.sql", "db/a.sql"));
    EXPECT_TRUE(glob_match("**/*.sql", "a.sql"));
    EXPECT_TRUE(glob_match("src/**", "src/x/y.cc"));
    EXPECT_TRUE(glob_match("a?c", "abc"));
    EXPECT_FALSE(glob_match("a?c", "a/c"));
}

TEST(LanguageDetect, RegisteredAndUnknownExtensions) {
    EXPECT_EQ(detect_language("src/main.cc"), "C++");
    EXPECT_EQ(detect_language("app/Login.cs"), "C#");
    EXPECT_EQ(detect_language("README.xyzzy"), "unknown");
    EXPECT_EQ(detect_language("LEGACY.CPP"), "C++");
    EXPECT_EQ(detect_language("q.sql"), "SQL");
    EXPECT_EQ(detect_language("Main.java"), "Java");
    EXPECT_EQ(detect_language("x.c"), "C");
}

TEST(LanguageRegistry, RejectsDuplicateExtensionAndEmptyMarkers) {
    auto reg = LanguageRegistry::builtin();
    EXPECT_THROW(reg.add(LanguageProfile{"Other", {".cc"}, {"#"}, {}, "\"", true}), ConfigError);
    EXPECT_THROW(reg.add(LanguageProfile{"Bad", {".bad"}, {"#"}, {{"", "*/"}}, "\"", true}), ConfigError);
    reg.add(LanguageProfile{"Python", {".py"}, {"#"}, {}, "\"'", true});
    EXPECT_EQ(reg.detect("a.py"), "Python");
}

TEST(Classifier, MixedLineIsCode) {
    EXPECT_EQ(classes("int x; // trailing"), std::vector{LineClass::Code});
}

TEST(Classifier, BlockCommentThenBlankThenCode) {
    const auto c = classify_lines("/* a\n b */\n\nint x;", LanguageRegistry::builtin().profile("C"));
    EXPECT_EQ(c.classes,
              (std::vector{LineClass::Comment, LineClass::Comment, LineClass::Blank, LineClass::Code}));
    EXPECT_EQ(c.counts, (LineCounts{1, 2, 1}));
}

TEST(Classifier, CommentOpenerInsideStringIsCode) {
    EXPECT_EQ(classes("s = \"/* not a comment */\";"), std::vector{LineClass::Code});
    EXPECT_EQ(classes("s = \"/* open\";\nint y;"), (std::vector{LineClass::Code, LineClass::Code}));
}

TEST(Classifier, SqlUsesDashComments) {
    const auto& sql = LanguageRegistry::builtin().profile("SQL");
    EXPECT_EQ(classes("-- note\nSELECT 1; -- tail\n", sql), (std::vector{LineClass::Comment, LineClass::Code}));
}

TEST(Classifier, TrailingNewlineAddsNoLine) {
    EXPECT_EQ(classes("").size(), 0u);
    EXPECT_EQ(classes("a\n").size(), 1u);
    EXPECT_EQ(classes("a\n\n").size(), 2u);
    EXPECT_EQ(classes("a\r\nb").size(), 2u);
}

TEST(Classifier, ViewsBlankCommentsAndStrings) {
    const auto a = analyze_lines("x = \"s\"; // c", cpp());
    ASSERT_EQ(a.lines.size(), 1u);
    EXPECT_EQ(a.lines[0].comment_text, "// c");
    EXPECT_EQ(a.lines[0].code_text, "x = \"s\";     ");
    EXPECT_EQ(a.lines[0].masked_code, "x = \" \";     ");
}

TEST(ClassifierProperty, CountsPartitionPhysicalLines) {
    std::mt19937_64 rng(7);
    for (const auto& p : LanguageRegistry::builtin().profiles()) {
        for (int n = 0; n < 100; ++n) {
            const std::string text = oracle::random_source(rng, p);
            const auto a = analyze_lines(text, p);
            EXPECT_EQ(a.counts.physical(), split_lines(text).size());
            for (const auto& v : a.lines) {
                EXPECT_EQ(v.code_text.size(), v.raw.size());
                EXPECT_EQ(v.masked_code.size(), v.raw.size());
            }
        }
    }
}

TEST(ClassifierProperty, AgreesWithReferenceInterpreter) {
    std::mt19937_64 rng(20240611);
    const auto& profiles = LanguageRegistry::builtin().profiles();
    for (int n = 0; n < 1200; ++n) {
        const auto& p = profiles[static_cast<std::size_t>(n) % profiles.size()];
        const std::string text = oracle::random_source(rng, p);
        ASSERT_EQ(classify_lines(text, p).classes, oracle::reference_classes(text, p))
            << "profile " << p.name << " input:\n" << text;
    }
}

TEST(Utf8, InvalidBytesAreReplaced) {
    EXPECT_EQ(sanitize_utf8("ok"), "ok");
    EXPECT_EQ(sanitize_utf8("a\xff" "b"), "a\xEF\xBF\xBD" "b");
    EXPECT_EQ(sanitize_utf8("\xC3\xA9"), "\xC3\xA9");
}

TEST(Ingest, EmptyDirectory) {
    TempDir dir;
    const auto inv = ingest(dir.path());
    EXPECT_TRUE(inv.files.empty());
    EXPECT_TRUE(inv.totals.empty());
    EXPECT_EQ(inv.grand_total(), LanguageTotals{});
}

TEST(Ingest, MissingRootThrows) { EXPECT_THROW(ingest("/nonexistent/vscan/root"), ConfigError); }

TEST(Ingest, FiveFileFixture) {
    TempDir dir;
    five_file_tree(dir.path());
    const auto inv = ingest(dir.path());
    ASSERT_EQ(inv.files.size(), 5u);
    EXPECT_EQ(inv.totals.at("C++").files, 2u);
    EXPECT_EQ(inv.totals.at("C#").files, 2u);
    EXPECT_EQ(inv.totals.at("SQL").files, 1u);
    EXPECT_EQ(inv.totals.size(), 3u);
    EXPECT_TRUE(std::is_sorted(inv.files.begin(), inv.files.end(),
                               [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; }));
    EXPECT_EQ(inv.files[0].path, "app/Account.cs");
    for (const auto& f : inv.files) EXPECT_EQ(f.code_lines + f.comment_lines + f.blank_lines, f.physical_lines);
    EXPECT_EQ(inv.totals.at("SQL").comment_lines, 1u);
    EXPECT_EQ(inv.totals.at("C++").physical_lines, 5u);
}

TEST(Ingest, ExcludeGlob) {
    TempDir dir;
    five_file_tree(dir.path());
    const auto inv = ingest(dir.path(), {}, {"**/*.sql"});
    EXPECT_EQ(inv.files.size(), 4u);
    EXPECT_FALSE(inv.totals.count("SQL"));
}

TEST(Ingest, IncludeGlob) {
    TempDir dir;
    five_file_tree(dir.path());
    EXPECT_EQ(ingest(dir.path(), {"app/**"}, {}).files.size(), 2u);
}

TEST(Ingest, IdempotentAndReadOnly) {
    TempDir dir;
    five_file_tree(dir.path());
    const auto before = snapshot(dir.path());
    IngestOptions one;
    one.jobs = 1;
    IngestOptions many;
    many.jobs = 8;
    const auto a = ingest(dir.path(), one);
    const auto b = ingest(dir.path(), many);
    EXPECT_EQ(a.files, b.files);
    EXPECT_EQ(a.totals, b.totals);
    EXPECT_EQ(snapshot(dir.path()), before);
}

TEST(Ingest, TotalsEqualSumOverFiles) {
    TempDir dir;
    five_file_tree(dir.path());
    write_file(dir / "notes.txt", "plain\n\n");
    const auto inv = ingest(dir.path());
    std::map<std::string, LanguageTotals> sum;
    for (const auto& f : inv.files) {
        auto& t = sum[f.language];
        ++t.files;
        t.physical_lines += f.physical_lines;
        t.code_lines += f.code_lines;
        t.comment_lines += f.comment_lines;
        t.blank_lines += f.blank_lines;
    }
    EXPECT_EQ(sum, inv.totals);
    EXPECT_EQ(inv.totals.at("unknown").files, 1u);
}

TEST(Ingest, BinaryFilesAreSkipped) {
    TempDir dir;
    write_file(dir / "a.cc", "int a;\n");
    write_file(dir / "blob.bin", std::string("\x7f" "ELF\0\0\x01", 7));
    const auto inv = ingest(dir.path());
    EXPECT_EQ(inv.files.size(), 1u);
    EXPECT_EQ(inv.skipped_binary, 1u);
}

TEST(Ingest, DigestIsContentHash) {
    TempDir dir;
    write_file(dir / "a.cc", "int a;\n");
    const auto inv = ingest(dir.path());
    EXPECT_EQ(inv.files.at(0).digest, sha256_hex("int a;\n"));
}

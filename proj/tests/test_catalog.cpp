#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include <knotoid/catalog.hpp>

using namespace knotoid;

namespace fs = std::filesystem;

TEST(Catalog, RequiredEntries) {
    auto cat = load_catalog();
    for (const char* id : {"trivial", "kink", "fig1g", "fig1f", "fig15_k1", "fig17_k1", "fig17_k2", "fig18_virtual",
                           "fig25", "fig31_slavik", "spiral_n1", "spiral_n2", "spiral_n3", "spiral3_mixed",
                           "knotoid_5_7"})
        EXPECT_NO_THROW(find_entry(cat, id)) << id;
    EXPECT_TRUE(std::is_sorted(cat.begin(), cat.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
    EXPECT_THROW(find_entry(cat, "nope"), Error);
}

TEST(Catalog, PrintedCodeIsExact) {
    auto cat = load_catalog();
    const auto& g = find_entry(cat, "fig1g");
    EXPECT_EQ(serialize_component(g.code.components[0]), "open: OA+ OB+ UC+ UD+ UA+ OE+ UF+ OD+ UB+ UE+ OF+ OC+");
    EXPECT_EQ(g.source, Source::TextCode);
    EXPECT_TRUE(g.declared_classical);
    EXPECT_EQ(g.code.declared_height_upper(), 2);
}

TEST(Catalog, EntriesVerify) {
    for (const auto& e : load_catalog()) {
        auto r = verify_entry(e);
        EXPECT_FALSE(r.items.empty()) << e.id;
        for (const auto& item : r.items) {
            EXPECT_FALSE(item.citation.empty()) << e.id << " " << item.invariant;
            if (!e.quarantined) {
                EXPECT_TRUE(item.ok) << e.id << " " << item.invariant << ": " << item.actual;
            }
        }
        if (e.quarantined) {
            EXPECT_FALSE(e.note.empty()) << e.id;
        }
    }
}

TEST(Catalog, DeclaredHeightsAreConsistent) {
    for (const auto& e : load_catalog()) {
        if (!e.code.is_single_leg() || !e.declared_height) continue;
        EXPECT_TRUE(height_bounds(e.code).consistent()) << e.id;
    }
}

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("knotoid_cat_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    void write(const std::string& name, const std::string& body) const { std::ofstream(path / name) << body; }
};

ErrorKind load_kind(const TempDir& d) {
    try {
        load_catalog(d.path.string());
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;
}

}  // namespace

TEST(Catalog, MalformedFixtures) {
    {
        TempDir d;
        d.write("a.knotoid", "meta source=Generated\nopen: O1+ U1+\n");
        auto cat = load_catalog(d.path.string());
        ASSERT_EQ(cat.size(), 1u);
        EXPECT_EQ(cat[0].id, "a");
    }
    {
        TempDir d;
        d.write("a.knotoid", "open: O1+ U1+\n");
        EXPECT_EQ(load_kind(d), ErrorKind::MalformedFixture);
    }
    {
        TempDir d;
        d.write("a.knotoid", "meta source=Generated\nmeta expect.colour=red\nopen: O1+ U1+\n");
        EXPECT_EQ(load_kind(d), ErrorKind::MalformedFixture);
    }
    {
        TempDir d;
        d.write("a.knotoid", "meta source=Generated\nmeta expect.bracket=A^^2\nopen: O1+ U1+\n");
        EXPECT_EQ(load_kind(d), ErrorKind::MalformedFixture);
    }
    {
        TempDir d;
        d.write("a.knotoid", "meta source=Generated\nopen: O1+ U1-\n");
        EXPECT_EQ(load_kind(d), ErrorKind::MalformedFixture);
    }
    {
        TempDir d;
        d.write("a.knotoid", "meta id=x\nmeta source=Generated\nopen: O1+ U1+\n");
        d.write("b.knotoid", "meta id=x\nmeta source=Generated\nopen:\n");
        EXPECT_EQ(load_kind(d), ErrorKind::MalformedFixture);
    }
    EXPECT_THROW(load_catalog("/nonexistent/knotoid"), Error);
}

TEST(Catalog, WrongExpectationFails) {
    auto code = parse("meta source=Generated\nmeta expect.bracket=A^3\nmeta cite.bracket=kink value\nopen: O1+ U1+");
    auto r = verify_entry(entry_from_code(code, "k"));
    ASSERT_EQ(r.items.size(), 1u);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.items[0].actual, "-A^3");
    EXPECT_EQ(r.items[0].citation, "kink value");
}

/* test_automaton.cc -- core generator operations */

#include <algorithm>

#include "doctest.h"
#include "fixtures.hh"
#include "qsup/automaton.hh"

using namespace qsup;
using namespace qsup::testing;

TEST_CASE("validate accepts a well-formed description") {
    Generator g = fixture_f1();
    CHECK(g.num_states() == 2);
    CHECK(g.num_transitions() == 2);
    CHECK(g.has_initial());
    CHECK(g.name(g.initial()) == "A");
    CHECK(g.marked(g.initial()));
    CHECK(g.alphabet().size() == 2);
}

TEST_CASE("validate rejects malformed descriptions") {
    RawAutomaton raw;
    raw.alphabet = {{"a", Ctrl::controllable}};
    raw.states = {"0", "1"};
    raw.initial = "0";

    SUBCASE("duplicate transition on same state and event") {
        raw.transitions = {{"0", "a", "0"}, {"0", "a", "1"}};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("undeclared target state") {
        raw.transitions = {{"0", "a", "9"}};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("undeclared event") {
        raw.transitions = {{"0", "z", "1"}};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("marked state that was never declared") {
        raw.marked = {"7"};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("states without an initial state") {
        raw.initial.reset();
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("duplicate event names") {
        raw.alphabet = {{"a", Ctrl::controllable}, {"a", Ctrl::uncontrollable}};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
    SUBCASE("duplicate state names") {
        raw.states = {"0", "0"};
        CHECK_THROWS_AS(validate(raw), ValidationError);
    }
}

TEST_CASE("walk replays event sequences") {
    Generator g = fixture_f2();
    auto s = g.walk(g.initial(), {"a", "b", "b", "c"});
    REQUIRE(s.has_value());
    CHECK(g.name(*s) == "2");
    CHECK_FALSE(g.walk(g.initial(), {"c"}).has_value());
    CHECK_FALSE(g.walk(g.initial(), {"a", "nope"}).has_value());
}

TEST_CASE("reachable and coreachable sets") {
    // 0 -a-> 1 -b-> 2(marked); 3 is unreachable; 4 reachable but dead.
    Generator g = make_generator({"a", "b", "d"}, "0", {"2"},
                                 {{"0", "a", "1"}, {"1", "b", "2"}, {"0", "d", "4"}},
                                 {}, {"3"});
    auto r = reachable(g);
    std::vector<std::string> rn;
    for (StateId s : r) rn.push_back(g.name(s));
    std::sort(rn.begin(), rn.end());
    CHECK(rn == std::vector<std::string>{"0", "1", "2", "4"});

    auto c = coreachable(g);
    std::vector<std::string> cn;
    for (StateId s : c) cn.push_back(g.name(s));
    std::sort(cn.begin(), cn.end());
    CHECK(cn == std::vector<std::string>{"0", "1", "2"});
}

TEST_CASE("trim keeps exactly the useful part") {
    Generator g = make_generator({"a", "b", "d"}, "0", {"2"},
                                 {{"0", "a", "1"}, {"1", "b", "2"}, {"0", "d", "4"}},
                                 {}, {"3"});
    Generator t = trim(g);
    CHECK(t.num_states() == 3);
    CHECK(t.num_transitions() == 2);
    CHECK(marked_language_compare(g, t).equal());

    SUBCASE("trimming to nothing yields the empty generator") {
        Generator dead = make_generator({"a"}, "0", {}, {{"0", "a", "1"}});
        Generator td = trim(dead);
        CHECK(td.empty());
        CHECK_FALSE(td.has_initial());
    }
    SUBCASE("trim is idempotent") {
        Generator tt = trim(t);
        CHECK(tt.num_states() == t.num_states());
        CHECK(marked_language_compare(t, tt).equal());
    }
}

TEST_CASE("is_nonblocking detects dead states with access witnesses") {
    CHECK(is_nonblocking(fixture_f1()).holds);
    CHECK(is_nonblocking(fixture_f2()).holds);

    Generator g = make_generator({"a", "b"}, "0", {"1"},
                                 {{"0", "a", "1"}, {"0", "b", "2"}});
    Verdict v = is_nonblocking(g);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.witnesses.size() == 1);
    CHECK(v.witnesses[0].state == "2");
    CHECK(v.witnesses[0].kind == Witness::Kind::unreachable);
    CHECK(v.witnesses[0].events == std::vector<std::string>{"b"});
}

TEST_CASE("product intersects closed and marked languages") {
    Generator f2 = fixture_f2();
    // Recognizer of {ac, abc} (a chain with optional b), same alphabet.
    Generator k = make_generator({"a", "b", "c"}, "p", {"q"},
                                 {{"p", "a", "r"},
                                  {"r", "b", "s"},
                                  {"r", "c", "q"},
                                  {"s", "c", "q"}});
    Generator p = product(f2, k);
    auto lang = marked_upto(p, 4);
    CHECK(lang == std::set<Word>{word({"a", "c"}), word({"a", "b", "c"})});

    SUBCASE("composite names are kept") {
        CHECK(p.name(p.initial()) == "(0,p)");
    }
    SUBCASE("alphabet mismatch is an error") {
        Generator other = make_generator({"x"}, "0", {"0"}, {});
        CHECK_THROWS_AS(product(f2, other), AlphabetError);
    }
    SUBCASE("shared-alphabet synchronization is total") {
        ComparisonResult c = marked_language_compare(product(f2, f2), f2);
        CHECK(c.equal());
    }
}

TEST_CASE("complement swaps membership relative to the full language") {
    Generator f1 = fixture_f1();
    Generator c = complement(f1);
    auto orig = marked_upto(f1, 3);
    auto comp = enumerate_bounded(c, 3);
    // Complement accepts exactly the non-members, and its closed language
    // is every string.
    for (const auto& w : comp.marked) CHECK(orig.count(w) == 0);
    std::size_t total = 0;
    for (std::size_t len = 0, pw = 1; len <= 3; ++len, pw *= 2) total += pw;
    CHECK(comp.closed.size() == total);
    CHECK(orig.size() + comp.marked.size() == total);

    SUBCASE("complement of empty accepts everything") {
        Generator none(f1.alphabet());
        Generator all = complement(none);
        CHECK(enumerate_bounded(all, 2).marked.size() == 7); // 1 + 2 + 4
    }
    SUBCASE("double complement restores the marked language") {
        CHECK(marked_language_compare(complement(c), f1).equal());
    }
}

TEST_CASE("union_marked joins marked languages and trims") {
    Generator a = make_generator({"x", "y"}, "0", {"1"}, {{"0", "x", "1"}});
    Generator b = make_generator({"x", "y"}, "0", {"1"}, {{"0", "y", "1"}});
    Generator u = union_marked(a, b);
    CHECK(marked_upto(u, 2) == std::set<Word>{word({"x"}), word({"y"})});
    // Trim: every state of the union is reachable and coreachable.
    Generator t = trim(u);
    CHECK(t.num_states() == u.num_states());

    SUBCASE("union with empty is identity up to language") {
        Generator none(a.alphabet());
        CHECK(marked_language_compare(union_marked(a, none), a).equal());
    }
}

TEST_CASE("marked_language_compare classifies and witnesses") {
    Generator f2 = fixture_f2();
    // Lm = {ac} only.
    Generator small = make_generator({"a", "b", "c"}, "p", {"q"},
                                     {{"p", "a", "r"}, {"r", "c", "q"}});

    SUBCASE("equal") {
        ComparisonResult c = marked_language_compare(f2, f2);
        CHECK(c.relation == ComparisonResult::Relation::equal);
        CHECK_FALSE(c.in_a_not_b.has_value());
        CHECK_FALSE(c.in_b_not_a.has_value());
    }
    SUBCASE("strict subset with shortest witness") {
        ComparisonResult c = marked_language_compare(small, f2);
        CHECK(c.relation == ComparisonResult::Relation::a_subset_b);
        REQUIRE(c.in_b_not_a.has_value());
        CHECK(*c.in_b_not_a == word({"a", "b", "c"}));
        ComparisonResult rev = marked_language_compare(f2, small);
        CHECK(rev.relation == ComparisonResult::Relation::b_subset_a);
        REQUIRE(rev.in_a_not_b.has_value());
        CHECK(*rev.in_a_not_b == word({"a", "b", "c"}));
    }
    SUBCASE("incomparable carries both witnesses") {
        Generator a = make_generator({"x", "y"}, "0", {"1"}, {{"0", "x", "1"}});
        Generator b = make_generator({"x", "y"}, "0", {"1"}, {{"0", "y", "1"}});
        ComparisonResult c = marked_language_compare(a, b);
        CHECK(c.relation == ComparisonResult::Relation::incomparable);
        REQUIRE(c.in_a_not_b.has_value());
        REQUIRE(c.in_b_not_a.has_value());
        CHECK(*c.in_a_not_b == word({"x"}));
        CHECK(*c.in_b_not_a == word({"y"}));
    }
    SUBCASE("empty against nonempty") {
        Generator none(f2.alphabet());
        ComparisonResult c = marked_language_compare(none, f2);
        CHECK(c.relation == ComparisonResult::Relation::a_subset_b);
        REQUIRE(c.in_b_not_a.has_value());
        CHECK(*c.in_b_not_a == word({"a", "c"}));
    }
    SUBCASE("epsilon is the shortest possible witness") {
        Generator eps = make_generator({"a", "b", "c"}, "0", {"0"}, {});
        ComparisonResult c = marked_language_compare(eps, f2);
        CHECK(c.relation == ComparisonResult::Relation::incomparable);
        CHECK(*c.in_a_not_b == Word{});
    }
}

TEST_CASE("closed_language_compare works on prefix-closed languages") {
    Generator f2 = fixture_f2();
    Generator small = make_generator({"a", "b", "c"}, "p", {"q"},
                                     {{"p", "a", "r"}, {"r", "c", "q"}});
    ComparisonResult c = closed_language_compare(small, f2);
    CHECK(c.relation == ComparisonResult::Relation::a_subset_b);
    REQUIRE(c.in_b_not_a.has_value());
    CHECK(*c.in_b_not_a == word({"a", "b"}));
}

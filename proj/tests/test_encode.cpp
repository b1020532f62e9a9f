#include "gen.hpp"
#include "scl/reductions.hpp"

#include <doctest.h>

using namespace scl;

namespace {
const SemiringId N = SemiringId::natural;

std::vector<int> bits_of(const Encoded& e, size_t from, size_t count) {
    std::vector<int> out;
    for (size_t i = from; i < from + count; ++i) out.push_back(e[i].is_one() ? 1 : 0);
    return out;
}
}  // namespace

TEST_CASE("proposition layout") {
    auto e = encode(f::prop("p"), N);
    // tag 001, sign 0, length block 101 1 0 1, then 'p' = 0x70.
    CHECK(bits_of(e, 0, 4) == std::vector<int>{0, 0, 1, 0});
    CHECK(bits_of(e, 4, 6) == std::vector<int>{1, 0, 1, 1, 0, 1});
    CHECK(bits_of(e, 10, 8) == std::vector<int>{0, 1, 1, 1, 0, 0, 0, 0});
    auto c = encode(f::constant(Value::natural(7)), N);
    CHECK(bits_of(c, 0, 3) == std::vector<int>{1, 0, 0});
    CHECK(c[3] == Value::natural(7));
    for (auto& v : e) CHECK((v.is_zero() || v.is_one()));
}

TEST_CASE("formula round trip") {
    gen::Rng rng(81);
    for (SemiringId id : all_semirings()) {
        gen::PLGen g{id, {"p", "q", "long_name"}, gen::sample6(id)};
        for (int i = 0; i < 100; ++i) {
            Formula phi = g(rng, 4);
            INFO(semiring_name(id));
            CHECK(equal(decode_formula(encode(phi, id), id), phi));
        }
    }
    gen::FOGen fg{{{"E", 2}, {"U", 1}}};
    for (int i = 0; i < 100; ++i) {
        std::vector<std::string> scope;
        Formula body = fg(rng, 4, scope);
        if (gen::coin(rng)) body = f::land(body, f::constant(Value::natural(gen::uniform(rng, 0, 9))));
        Formula phi = f::so_exists("P", 2, f::so_exists("Z", 0, body));
        CHECK(equal(decode_formula(encode(phi, N), N), phi));
    }
}

TEST_CASE("interpretation and assignment round trip") {
    gen::Rng rng(82);
    for (SemiringId id : all_semirings()) {
        auto sample = gen::sample6(id);
        Vocabulary voc;
        voc.add("R", 2);
        voc.add("S", 0);
        auto pi = KInterpretation::ordered(id, 3, voc);
        for (auto& r : {"R", "S"})
            for (bool neg : {false, true})
                for (auto& v : pi.facts(r, neg)) v = gen::pick(rng, sample);
        CHECK(decode_interpretation(encode(pi), id) == pi);
        auto s = gen::random_assignment(rng, id, {"p", "q", "r"}, sample);
        CHECK(decode_assignment(encode(s), id) == s);
    }
}

TEST_CASE("decode errors") {
    auto e = encode(f::land(f::prop("p"), f::prop("q")), N);
    for (size_t cut : {size_t(0), size_t(2), e.size() / 2, e.size() - 1}) {
        Encoded part(e.begin(), e.begin() + static_cast<long>(cut));
        CHECK_THROWS_AS(decode_formula(part, N), DecodeError);
    }
    Encoded junk = e;
    junk.push_back(Value::one(N));
    CHECK_THROWS_AS(decode_formula(junk, N), DecodeError);
    Encoded bad = e;
    bad[1] = Value::natural(5);
    try {
        decode_formula(bad, N);
        FAIL("accepted a non-bit symbol");
    } catch (const DecodeError& err) {
        CHECK(err.offset == 1);
    }
    CHECK_THROWS_AS(decode_formula(e, SemiringId::boolean), DecodeError);

    PLAssignment dup;
    dup.id = N;
    dup.set("p", false, Value::natural(1));
    auto enc = encode(dup);
    // Entry followed by the same entry again, then the end tag.
    Encoded entry(enc.begin(), enc.end() - 3);
    Encoded twice = entry;
    twice.insert(twice.end(), enc.begin(), enc.end());
    CHECK(decode_assignment(enc, N) == dup);
    CHECK_THROWS_AS(decode_assignment(twice, N), DecodeError);
    CHECK_THROWS_AS(decode_assignment(entry, N), DecodeError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gplus/bounds.hpp"
#include "gplus/errors.hpp"
#include "gplus/ingest.hpp"
#include "support.hpp"

using namespace gplus;
using testsupport::clone_fixture;
using testsupport::fixture_dir;
using testsupport::random_fingerprint;
using testsupport::TempDir;

namespace {

Dataset load_mini() {
    return load_dataset(DatasetPaths::in_dir(fixture_dir()), GPlusConfig{});
}

Fingerprint componentwise_min(const std::vector<Fingerprint>& fps) {
    std::vector<double> acc(fps.front().dimension(), kMaxLevel);
    for (const auto& fp : fps) {
        for (std::size_t d = 0; d < acc.size(); ++d) acc[d] = std::min(acc[d], fp[d]);
    }
    return Fingerprint(std::move(acc));
}

/// Synthetic dataset with consistent cross-links, built directly.
Dataset random_dataset(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<int> occ_count(1, 6);
    std::uniform_int_distribution<int> task_count(0, 12);
    std::uniform_int_distribution<int> dwa_count(1, 5);
    std::uniform_int_distribution<int> coin(0, 1);

    Dataset::Data data;
    for (std::size_t d = 0; d < dim; ++d) {
        WorkPrimitive p;
        p.element_id = "2.A." + std::to_string(d + 1);
        p.kind = PrimitiveKind::Skill;
        p.name = "primitive " + std::to_string(d);
        p.index = d;
        data.primitives.push_back(std::move(p));
    }

    const int n_occ = occ_count(rng);
    std::vector<std::string> socs;
    for (int i = 0; i < n_occ; ++i) {
        Occupation occ;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%02d-%04d.00", 10 + i, 1000 + i);
        occ.soc_code = buf;
        occ.title = "occupation " + std::to_string(i);
        occ.fingerprint = random_fingerprint(rng, dim);
        socs.push_back(occ.soc_code);
        data.occupations.emplace(occ.soc_code, std::move(occ));
    }

    const int n_dwa = dwa_count(rng);
    std::vector<std::string> dwas;
    for (int i = 0; i < n_dwa; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "4.A.1.a.1.I01.D%02d", i + 1);
        WorkActivity activity;
        activity.label = parse_content_model_label(buf);
        activity.title = "detailed activity " + std::to_string(i);
        activity.level = activity.label.level;
        dwas.push_back(activity.label.raw);
        data.activities.emplace(activity.label.raw, std::move(activity));
    }

    const int n_task = task_count(rng);
    std::map<std::string, std::set<std::string>> contributors;
    for (int i = 0; i < n_task; ++i) {
        TaskStatement task;
        task.task_id = i + 1;
        task.text = "task " + std::to_string(i);
        task.occupation_code = socs[static_cast<std::size_t>(rng() % socs.size())];
        task.importance = 50.0;
        for (const auto& dwa : dwas) {
            if (coin(rng)) {
                task.dwa_labels.push_back(parse_content_model_label(dwa));
                data.task_to_dwa[task.task_id].push_back(dwa);
                contributors[dwa].insert(task.occupation_code);
            }
        }
        data.occupations.at(task.occupation_code).task_ids.push_back(task.task_id);
        data.tasks.emplace(task.task_id, std::move(task));
    }
    for (const auto& [dwa, socs_set] : contributors) {
        data.dwa_to_occupations.emplace(dwa,
                                        std::vector<std::string>(socs_set.begin(), socs_set.end()));
    }
    return Dataset(std::move(data));
}

}  // namespace

TEST_CASE("DWA bounds are componentwise minima over owning occupations") {
    const Dataset dataset = load_mini();
    const auto dwa_bounds = derive_dwa_bounds(dataset);

    CHECK(dwa_bounds.excluded.empty());
    REQUIRE(dwa_bounds.bounds.size() == 4);
    CHECK(dwa_bounds.bounds.at("4.A.1.a.1.I14.D02") == Fingerprint({3, 2.5, 4, 2, 2, 0}));
    CHECK(dwa_bounds.bounds.at("4.A.4.a.2.I09.D01") == Fingerprint({3, 2.5, 4, 2, 2, 0}));
    CHECK(dwa_bounds.bounds.at("4.A.2.b.2.I11.D05") == Fingerprint({5, 6, 4, 1, 3, 2}));
    CHECK(dwa_bounds.bounds.at("4.A.3.b.1.I07.D03") == Fingerprint({3, 2.5, 4, 1, 2, 0}));
    CHECK(dwa_bounds.bounds.at("4.A.3.b.1.I07.D03").sum() == doctest::Approx(12.5));
}

TEST_CASE("task bounds are minima over the task's DWA bounds") {
    const Dataset dataset = load_mini();
    const auto dwa_bounds = derive_dwa_bounds(dataset);
    const auto task_bounds = derive_task_bounds(dataset, dwa_bounds);

    REQUIRE(task_bounds.bounds.size() == 4);
    CHECK(task_bounds.bounds.at(1) == Fingerprint({3, 2.5, 4, 2, 2, 0}));
    CHECK(task_bounds.bounds.at(2) == Fingerprint({3, 2.5, 4, 1, 2, 0}));
    CHECK(task_bounds.bounds.at(100) == Fingerprint({5, 6, 4, 1, 3, 2}));
    CHECK(task_bounds.bounds.at(23955) == Fingerprint({3, 2.5, 4, 1, 2, 0}));
    CHECK(task_bounds.excluded == std::vector<std::int64_t>{7});
}

TEST_CASE("detailed activities with no mapped tasks are excluded, not dropped") {
    TempDir dir;
    clone_fixture(dir);
    testsupport::write_file(dir.path() / "activities.tsv",
                            testsupport::read_file(dir.path() / "activities.tsv") +
                                "4.A.4.a.2.I09.D07\tUnmapped detailed activity\n");
    const Dataset dataset = load_dataset(DatasetPaths::in_dir(dir.path()), GPlusConfig{});
    const auto dwa_bounds = derive_dwa_bounds(dataset);
    CHECK(dwa_bounds.bounds.size() == 4);
    CHECK(dwa_bounds.excluded == std::vector<std::string>{"4.A.4.a.2.I09.D07"});

    const auto task_bounds = derive_task_bounds(dataset, dwa_bounds);
    CHECK(task_bounds.bounds.size() == 4);
    CHECK(task_bounds.excluded == std::vector<std::int64_t>{7});
}

TEST_CASE("bounds on the mini dataset match a brute-force recomputation") {
    const Dataset dataset = load_mini();
    const auto dwa_bounds = derive_dwa_bounds(dataset);
    const auto task_bounds = derive_task_bounds(dataset, dwa_bounds);

    for (const auto& [raw, activity] : dataset.activities()) {
        if (activity.level != LabelLevel::Detailed) {
            CHECK(dwa_bounds.bounds.count(raw) == 0);
            continue;
        }
        std::vector<Fingerprint> contributors;
        for (const auto& [task_id, task] : dataset.tasks()) {
            const bool mapped =
                std::any_of(task.dwa_labels.begin(), task.dwa_labels.end(),
                            [&](const ContentModelLabel& l) { return l.raw == raw; });
            if (mapped) {
                contributors.push_back(
                    dataset.occupations().at(task.occupation_code).fingerprint);
            }
        }
        if (contributors.empty()) {
            CHECK(std::count(dwa_bounds.excluded.begin(), dwa_bounds.excluded.end(), raw) == 1);
        } else {
            REQUIRE(dwa_bounds.bounds.count(raw) == 1);
            CHECK(dwa_bounds.bounds.at(raw) == componentwise_min(contributors));
        }
    }

    for (const auto& [task_id, task] : dataset.tasks()) {
        std::vector<Fingerprint> parts;
        for (const auto& label : task.dwa_labels) {
            auto it = dwa_bounds.bounds.find(label.raw);
            if (it != dwa_bounds.bounds.end()) parts.push_back(it->second);
        }
        if (parts.empty()) {
            CHECK(std::count(task_bounds.excluded.begin(), task_bounds.excluded.end(), task_id) ==
                  1);
        } else {
            REQUIRE(task_bounds.bounds.count(task_id) == 1);
            CHECK(task_bounds.bounds.at(task_id) == componentwise_min(parts));
        }
    }
}

TEST_CASE("bound derivation matches the oracle on synthetic datasets") {
    std::mt19937_64 rng(9001);
    for (int trial = 0; trial < 100; ++trial) {
        const Dataset dataset = random_dataset(rng, 5);
        const auto dwa_bounds = derive_dwa_bounds(dataset);
        const auto task_bounds = derive_task_bounds(dataset, dwa_bounds);

        std::size_t detailed = 0;
        for (const auto& [raw, activity] : dataset.activities()) {
            if (activity.level != LabelLevel::Detailed) continue;
            ++detailed;
            std::vector<Fingerprint> contributors;
            for (const auto& [task_id, task] : dataset.tasks()) {
                for (const auto& label : task.dwa_labels) {
                    if (label.raw == raw) {
                        contributors.push_back(
                            dataset.occupations().at(task.occupation_code).fingerprint);
                        break;
                    }
                }
            }
            if (contributors.empty()) {
                REQUIRE(std::count(dwa_bounds.excluded.begin(), dwa_bounds.excluded.end(), raw) ==
                        1);
                REQUIRE(dwa_bounds.bounds.count(raw) == 0);
            } else {
                REQUIRE(dwa_bounds.bounds.count(raw) == 1);
                const auto& bound = dwa_bounds.bounds.at(raw);
                REQUIRE(bound == componentwise_min(contributors));
                for (const auto& fp : contributors) {
                    for (std::size_t d = 0; d < 5; ++d) REQUIRE(bound[d] <= fp[d]);
                }
            }
        }
        REQUIRE(dwa_bounds.bounds.size() + dwa_bounds.excluded.size() == detailed);

        for (const auto& [task_id, task] : dataset.tasks()) {
            std::vector<Fingerprint> parts;
            for (const auto& label : task.dwa_labels) {
                auto it = dwa_bounds.bounds.find(label.raw);
                if (it != dwa_bounds.bounds.end()) parts.push_back(it->second);
            }
            if (parts.empty()) {
                REQUIRE(std::count(task_bounds.excluded.begin(), task_bounds.excluded.end(),
                                   task_id) == 1);
            } else {
                REQUIRE(task_bounds.bounds.count(task_id) == 1);
                REQUIRE(task_bounds.bounds.at(task_id) == componentwise_min(parts));
            }
        }
        REQUIRE(task_bounds.bounds.size() + task_bounds.excluded.size() ==
                dataset.tasks().size());
        REQUIRE(std::is_sorted(dwa_bounds.excluded.begin(), dwa_bounds.excluded.end()));
        REQUIRE(std::is_sorted(task_bounds.excluded.begin(), task_bounds.excluded.end()));
    }
}

TEST_CASE("distribution stats over the mini task bounds") {
    const Dataset dataset = load_mini();
    const auto task_bounds = derive_task_bounds(dataset, derive_dwa_bounds(dataset));
    const auto s = stats(task_bounds.bounds, GPlusConfig{});

    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(5.56490834268612).epsilon(1e-12));
    CHECK(s.stddev == doctest::Approx(1.3317462463428866).epsilon(1e-12));
    // Tasks 2 and 23955 tie at the minimum; the smaller key wins.
    CHECK(s.min_key == "2");
    CHECK(s.min_score == doctest::Approx(4.676393565282454).epsilon(1e-12));
    CHECK(s.max_key == "100");
    CHECK(s.max_score == doctest::Approx(7.856341189674523).epsilon(1e-12));
}

TEST_CASE("distribution stats over the occupations") {
    const Dataset dataset = load_mini();
    std::map<std::string, Fingerprint> fps;
    for (const auto& [soc, occ] : dataset.occupations()) fps.emplace(soc, occ.fingerprint);

    const auto s = stats(fps, GPlusConfig{});
    CHECK(s.count == 3);
    CHECK(s.mean == doctest::Approx(6.671654819802967).epsilon(1e-12));
    CHECK(s.stddev == doctest::Approx(1.1863260749744635).epsilon(1e-12));
    CHECK(s.min_key == "41-2031.00");
    CHECK(s.min_score == doctest::Approx(5.05050505050505).epsilon(1e-12));
    CHECK(s.max_key == "15-1251.00");
    CHECK(s.max_score == doctest::Approx(7.856341189674523).epsilon(1e-12));

    GPlusConfig derived;
    derived.norm_mode = NormMode::DerivedFromOccupations;
    std::vector<Fingerprint> occupation_fps;
    for (const auto& [soc, occ] : dataset.occupations()) occupation_fps.push_back(occ.fingerprint);
    derived.norm_constant = derive_norm_constant(occupation_fps);
    const auto ds = stats(fps, derived);
    CHECK(std::abs(ds.mean - 100.0) <= 1e-9 * 100.0);
}

TEST_CASE("stats reject an empty collection") {
    CHECK_THROWS_AS(stats(std::map<std::string, Fingerprint>{}, GPlusConfig{}), EmptyInput);
    CHECK_THROWS_AS(stats(std::map<std::int64_t, Fingerprint>{}, GPlusConfig{}), EmptyInput);
}

TEST_CASE("stats of a single entry") {
    std::map<std::string, Fingerprint> fps;
    fps.emplace("only", Fingerprint({1, 2, 3}));
    const auto s = stats(fps, GPlusConfig{});
    CHECK(s.count == 1);
    CHECK(s.stddev == 0.0);
    CHECK(s.min_key == "only");
    CHECK(s.max_key == "only");
    CHECK(s.mean == doctest::Approx(s.min_score));
    CHECK(s.min_score == s.max_score);
}

TEST_CASE("stats match a naive recomputation") {
    std::mt19937_64 rng(9002);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::int64_t, Fingerprint> fps;
        const int n = 1 + static_cast<int>(rng() % 30);
        for (int i = 0; i < n; ++i) {
            fps[static_cast<std::int64_t>(rng() % 10000)] = random_fingerprint(rng, 7);
        }
        const GPlusConfig config;
        const auto s = stats(fps, config);

        std::vector<double> scores;
        std::int64_t min_key = 0, max_key = 0;
        double min_score = 0.0, max_score = 0.0;
        bool first = true;
        for (const auto& [key, fp] : fps) {
            const double score = fp.sum() * 100.0 / config.norm_constant;
            scores.push_back(score);
            if (first || score < min_score) {
                min_score = score;
                min_key = key;
            }
            if (first || score > max_score) {
                max_score = score;
                max_key = key;
            }
            first = false;
        }
        double mean = 0.0;
        for (double v : scores) mean += v;
        mean /= static_cast<double>(scores.size());
        double var = 0.0;
        for (double v : scores) var += (v - mean) * (v - mean);
        var /= static_cast<double>(scores.size());

        REQUIRE(s.count == fps.size());
        REQUIRE(s.mean == doctest::Approx(mean).epsilon(1e-12));
        REQUIRE(s.stddev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
        REQUIRE(s.min_key == std::to_string(min_key));
        REQUIRE(s.max_key == std::to_string(max_key));
        REQUIRE(s.min_score == doctest::Approx(min_score).epsilon(1e-12));
        REQUIRE(s.max_score == doctest::Approx(max_score).epsilon(1e-12));
        REQUIRE(s.min_score <= s.mean + 1e-12);
        REQUIRE(s.mean <= s.max_score + 1e-12);
    }
}

TEST_CASE("a task bound is never harder than any of its DWA bounds") {
    // The task bound is the componentwise min of its DWA bounds, so meeting
    // any single DWA bound is enough to meet the task bound.
    const Dataset dataset = load_mini();
    const auto dwa_bounds = derive_dwa_bounds(dataset);
    const auto task_bounds = derive_task_bounds(dataset, dwa_bounds);
    const GPlusConfig config;
    std::mt19937_64 rng(9003);
    for (int trial = 0; trial < 500; ++trial) {
        const auto work = random_fingerprint(rng, dataset.dimension());
        for (const auto& [task_id, bound] : task_bounds.bounds) {
            const bool task_ok = performable(work, bound, config).performable;
            bool any_dwa_ok = false;
            for (const auto& label : dataset.tasks().at(task_id).dwa_labels) {
                auto it = dwa_bounds.bounds.find(label.raw);
                if (it == dwa_bounds.bounds.end()) continue;
                if (performable(work, it->second, config).performable) any_dwa_ok = true;
            }
            if (any_dwa_ok) REQUIRE(task_ok);
        }
    }
}

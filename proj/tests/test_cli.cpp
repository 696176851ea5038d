#include <catch_amalgamated.hpp>

#include <gramata/constructions.hpp>
#include <gramata/simulator.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gramata;

namespace {

struct Outcome
{
    int code = -1;
    std::string out;
};

Outcome cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + GRAMATA_CLI + "\" " + args + " 2>/dev/null";
    Outcome o;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        o.out.append(buf, n);
    const int status = pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string corpus(const std::string& name) { return std::string("\"") + GRAMATA_CORPUS_DIR + "/" + name + "\""; }

std::string temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("gramata-cli-" + name);
    std::ofstream(path, std::ios::binary) << text;
    return "\"" + path.string() + "\"";
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("run exit codes")
{
    const auto acc = cli("run " + corpus("upow.efa") + " aaaa");
    CHECK(acc.code == 0);
    CHECK(first_line(acc.out) == "Accept");
    const auto rej = cli("run " + corpus("upow.efa") + " aaa");
    CHECK(rej.code == 1);
    CHECK(first_line(rej.out) == "Reject");
    const auto und = cli("run " + corpus("upow.efa") + " aa --budget 1");
    CHECK(und.code == 2);
    CHECK(first_line(und.out) == "BudgetExhausted");
    CHECK(cli("run " + corpus("upow.efa") + " aaaa --budget-policy default").code == 0);
    CHECK(cli("run " + corpus("upow.efa") + " ab").code == 3);
}

TEST_CASE("run in JSON mode")
{
    const auto o = cli("--json run " + corpus("upow.efa") + " aa");
    CHECK(o.code == 0);
    CHECK(o.out.find("\"verdict\": \"Accept\"") != std::string::npos);
    CHECK(o.out.find("\"certificate\"") != std::string::npos);
}

TEST_CASE("enum output")
{
    CHECK(cli("enum " + corpus("oddpow.efa") + " --max-len 9").out == "aa\naaaaaaaa\n");
    CHECK(cli("enum " + corpus("anbncn.efa") + " --max-len 3").out == "ε\nabc\n");

    const std::string empty = temp_file("empty.efa", "group free:1\nstates q\ninitial q\naccepting\nalphabet a\n");
    const auto o = cli("enum " + empty + " --max-len 4");
    CHECK(o.code == 0);
    CHECK(o.out.empty());
}

TEST_CASE("enum matches the library")
{
    const EFA m = build_mult();
    std::string expected;
    for (const auto& w : enumerate(CompiledEfa(m), 4, m.policy()).accepted)
        expected += word_str(w) + "\n";
    CHECK(cli("enum " + corpus("mult.efa") + " --max-len 4 --workers 3").out == expected);
}

TEST_CASE("check against oracles")
{
    const auto pass = cli("check " + corpus("mult.efa") + " --oracle MULT --max-len 9");
    CHECK(pass.code == 0);
    CHECK(pass.out.rfind("pass", 0) == 0);
    const auto mismatch = cli("check " + corpus("upow.efa") + " --oracle ODDPOW --max-len 8");
    CHECK(mismatch.code == 1);
    CHECK(mismatch.out.find("mismatch\ta\t") != std::string::npos);
    CHECK(mismatch.out.find("mismatch\taaaa\t") != std::string::npos);
    CHECK(cli("check " + corpus("upow.efa") + " --oracle NOPE --max-len 8").code == 3);
    CHECK(cli("check " + corpus("upow.efa") + " --oracle UPOW --max-len 4 --budget 1").code == 2);
}

TEST_CASE("growth output")
{
    const auto o = cli("growth --group free:2 --radius 2");
    CHECK(o.code == 0);
    CHECK(o.out == "radius\tcount\n0\t1\n1\t5\n2\t17\n");
    const auto j = cli("--json growth --group heis --radius 4");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"counts\"") != std::string::npos);
    CHECK(cli("growth --group nonsense --radius 2").code == 3);
}

TEST_CASE("dissimilarity commands")
{
    const auto ex = cli("dissim --oracle UPOW --max-len 4");
    CHECK(ex.code == 0);
    CHECK(ex.out.find("exact\t3\n") != std::string::npos);
    const auto wb = cli("dissim --group free:2 -n 4");
    CHECK(wb.code == 0);
    CHECK(wb.out.find("lower_bound\t17\n") != std::string::npos);
    CHECK(cli("dissim --oracle MULT --max-len 20").code == 1);
}

TEST_CASE("paper experiments")
{
    const auto one = cli("paper --experiment upow-equiv-16");
    CHECK(one.code == 0);
    CHECK(one.out.rfind("PASS", 0) == 0);
    CHECK(cli("paper --experiment no-such-thing").code == 3);
    // Two criteria fail as measured: the BS(1,2) labels of the upow machine
    // have determinants 2 and 1/2, and the Heisenberg probe crosses at n = 18.
    const auto all = cli("paper --all --workers 2");
    CHECK(all.code == 1);
    CHECK(all.out.find("FAIL\t4\talgebraic-identities\n") != std::string::npos);
    CHECK(all.out.find("FAIL\t9\ttheorem-growth-probe-h\n") != std::string::npos);
    for (int c : {1, 2, 3, 5, 6, 7, 8, 10, 11})
        CHECK(all.out.find("PASS\t" + std::to_string(c) + "\t") != std::string::npos);
    CHECK(all.out.find("some criteria fail") != std::string::npos);
}

TEST_CASE("probe by experiment id and by file")
{
    const auto h = cli("probe --experiment theorem-growth-probe-h");
    CHECK(h.code == 1);
    CHECK(h.out.find("configs_at_n, every later n; required n <= 16): n = 18") != std::string::npos);
    const auto o = cli("probe " + corpus("wp-f2.efa") + " --max-len 6");
    CHECK(o.code == 0);
    CHECK(o.out.find("# crossing\tnone") != std::string::npos);
    CHECK(o.out.find("# prefix_crossing\tnone") != std::string::npos);
}

TEST_CASE("canon is the library serialization")
{
    CHECK(cli("canon " + corpus("composite.efa")).out == serialize_efa(build_composite()));
}

TEST_CASE("parse and usage errors exit 3")
{
    const std::string bad = temp_file("bad.efa", "group matrix-Q 2 det=1\nstates q\ninitial q\naccepting q\n"
                                                 "alphabet a\ntransitions\nq a q [[1,0],[0,2]]\n");
    CHECK(cli("run " + bad + " a").code == 3);
    const std::string junk = temp_file("junk.efa", "hello world\n");
    CHECK(cli("enum " + junk + " --max-len 2").code == 3);
    CHECK(cli("run").code == 3);
    CHECK(cli("frobnicate").code == 3);
}

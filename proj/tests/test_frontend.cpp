#include <gtest/gtest.h>

#include "oracles.hpp"
#include "txbasis/model.hpp"
#include "txbasis/parser.hpp"
#include "txbasis/printer.hpp"

using namespace txbasis;

namespace {

std::vector<std::string> names(const std::vector<FunctionSig>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(f.name);
  return out;
}

SourceLoc parse_error_loc(const std::string& src) {
  try {
    parse_source(src);
  } catch (const ParseError& e) {
    return e.loc();
  }
  ADD_FAILURE() << "no parse error for: " << src;
  return {};
}

}  // namespace

TEST(Frontend, FishTokenShape) {
  SourceUnit u = parse_source(oracle::fixture("fishtoken.msol"));
  ASSERT_EQ(u.contracts.size(), 1u);
  const ContractDecl& c = u.contracts[0];
  EXPECT_EQ(c.name, "FishToken");
  EXPECT_EQ(c.state_vars.size(), 4u);
  EXPECT_EQ(c.functions.size(), 4u);
  EXPECT_EQ(c.state_vars[1].type, Type::mapping(BaseType::Address, BaseType::Uint));
  EXPECT_EQ(c.state_vars[3].type, Type::array(BaseType::Address));
}

TEST(Frontend, ModelClassifiesInterface) {
  DappModel m = build_dapp_model(parse_source(oracle::fixture("dao.msol")), parse_accounts("alice=5"));
  const ContractModel& v = m.contracts.at(0);
  EXPECT_EQ(names(v.state_changing), (std::vector<std::string>{"depositFunds", "withdrawFunds"}));
  EXPECT_EQ(names(v.views), (std::vector<std::string>{"balanceOf"}));
  EXPECT_EQ(names(v.internal), (std::vector<std::string>{"_withdrawFunds"}));
  EXPECT_TRUE(v.find_entry("depositFunds")->payable());
  EXPECT_FALSE(v.constructor.has_value());
}

TEST(Frontend, PrintParseRoundTrip) {
  for (const char* f : {"fishtoken.msol", "dao.msol", "pool.msol", "counter.msol", "trivial.msol"}) {
    SourceUnit a = parse_source(oracle::fixture(f));
    std::string printed = print_unit(a);
    SourceUnit b = parse_source(printed);
    EXPECT_TRUE(same_structure(a, b)) << f;
    EXPECT_EQ(print_unit(b), printed) << f;
  }
}

TEST(Frontend, ParseErrorsCarryLocations) {
  SourceLoc l = parse_error_loc("contract A {\n  uint x;\n  function f() public { x = 1 }\n}");
  EXPECT_EQ(l.line, 3);
  l = parse_error_loc("contract A {\n  function f() public {\n    y = 1;\n  }\n}");
  EXPECT_EQ(l.line, 3);
}

TEST(Frontend, ResolverRejectsBadPrograms) {
  EXPECT_THROW(parse_source("contract A { uint x; uint x; }"), ParseError);
  EXPECT_THROW(parse_source("contract A { function f() public { uint a; uint a; } }"), ParseError);
  EXPECT_THROW(parse_source("contract A { bool b; function f() public { b = 1; } }"), ParseError);
  EXPECT_THROW(parse_source("contract A { function f() public returns (uint256) { return; } }"), ParseError);
  EXPECT_THROW(parse_source("contract A { function g(uint a) internal {} function f() public { g(); } }"), ParseError);
}

TEST(Frontend, ViewMayNotWriteState) {
  SourceUnit u = parse_source("contract A { uint x; function f() public view returns (uint256) { x = 1; return x; } }");
  EXPECT_THROW(build_dapp_model(u, parse_accounts("alice")), ModelError);
}

TEST(Frontend, AccountRoles) {
  auto r = parse_accounts("alice=100,bob");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].name, "alice");
  EXPECT_EQ(r[0].balance, 100);
  EXPECT_EQ(r[1].balance, 0);
  EXPECT_THROW(parse_accounts("alice=x"), ModelError);
  SourceUnit u = parse_source(oracle::fixture("trivial.msol"));
  EXPECT_THROW(build_dapp_model(u, parse_accounts("a,a")), ModelError);
  EXPECT_THROW(build_dapp_model(u, parse_accounts("T")), ModelError);
}

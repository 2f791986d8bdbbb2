#pragma once

// Mutable world state for the interpreter. Copyable; a copy is a snapshot.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "txbasis/model.hpp"

namespace txbasis {

/// Fixed address assignment: account roles and contracts get disjoint ranges.
struct AddressBook {
  static constexpr unsigned kAccountBase = 0xA000;
  static constexpr unsigned kContractBase = 0xC000;

  static U256 account(int i) { return U256(kAccountBase + static_cast<unsigned>(i)); }
  static U256 contract(int i) { return U256(kContractBase + static_cast<unsigned>(i)); }

  static std::optional<int> account_of(const U256& a, size_t n) {
    if (a < kAccountBase || a >= kAccountBase + n) return std::nullopt;
    return static_cast<int>(a - kAccountBase);
  }
  static std::optional<int> contract_of(const U256& a, size_t n) {
    if (a < kContractBase || a >= kContractBase + n) return std::nullopt;
    return static_cast<int>(a - kContractBase);
  }
};

struct StorageVar {
  U256 scalar = 0;
  std::vector<U256> array;
  std::map<U256, U256> map;

  bool operator==(const StorageVar&) const = default;
};

struct ContractState {
  bool deployed = false;
  U256 ether = 0;
  std::vector<StorageVar> vars;

  bool operator==(const ContractState&) const = default;
};

struct WorldState {
  std::vector<U256> balances;  // per account role
  std::vector<ContractState> contracts;
  std::map<U256, U256> others;  // ether sent to addresses outside the dapp

  bool operator==(const WorldState&) const = default;

  /// Clear state: nothing deployed, roles hold their initial balances.
  static WorldState initial(const DappModel& model, const std::vector<AccountRole>& roles) {
    WorldState w;
    for (const auto& a : roles) w.balances.push_back(a.balance);
    for (const auto& c : model.unit.contracts) {
      ContractState s;
      s.vars.resize(c.state_vars.size());
      w.contracts.push_back(std::move(s));
    }
    return w;
  }

  /// Total ether held by accounts, contracts and outside addresses.
  U256 total_ether() const {
    U256 t = 0;
    for (const auto& b : balances) t += b;
    for (const auto& c : contracts) t += c.ether;
    for (const auto& [a, b] : others) t += b;
    return t;
  }

  /// Ether held at `addr`, wherever it lives.
  U256& ether_at(const U256& addr) {
    if (auto a = AddressBook::account_of(addr, balances.size())) return balances[*a];
    if (auto c = AddressBook::contract_of(addr, contracts.size())) return contracts[*c].ether;
    return others[addr];
  }
};

/// Display name for an address: role or contract name, else hex.
inline std::string address_name(const DappModel& model, const U256& a) {
  if (auto i = AddressBook::account_of(a, model.accounts.size())) return model.accounts[*i].name;
  if (auto i = AddressBook::contract_of(a, model.contracts.size())) return model.contracts[*i].name;
  std::ostringstream os;
  os << "0x" << std::hex << a;
  return os.str();
}

/// Address of a role or contract name.
inline std::optional<U256> address_of(const DappModel& model, const std::string& name) {
  int a = model.account_index(name);
  if (a >= 0) return AddressBook::account(a);
  int c = model.contract_index(name);
  if (c >= 0) return AddressBook::contract(c);
  return std::nullopt;
}

}  // namespace txbasis

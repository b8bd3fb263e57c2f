// Copyright 2026 The icsim Authors
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

#include <algorithm>
#include <iterator>
#include <mutex>
#include <stdexcept>
#include <string>

#include "gf2.hpp"

namespace icsim {

namespace {

const Modulus kTable[] = {
#include "irreducibles.inc"
};

#ifndef NDEBUG
// Debug builds re-verify each modulus the first time a field is built on it.
void verify_once(const Modulus& f) {
    static std::mutex mu;
    static std::vector<int> verified;
    std::lock_guard<std::mutex> lock(mu);
    if (std::find(verified.begin(), verified.end(), f.m) != verified.end()) return;
    if (!is_irreducible(f)) throw std::logic_error("table modulus is reducible at m=" + std::to_string(f.m));
    verified.push_back(f.m);
}
#endif

}  // namespace

int max_table_degree() { return std::prev(std::end(kTable))->m; }

const Modulus* table_modulus(int m) {
    auto it = std::lower_bound(std::begin(kTable), std::end(kTable), m,
                               [](const Modulus& f, int v) { return f.m < v; });
    if (it == std::end(kTable) || it->m != m) return nullptr;
    return &*it;
}

int supported_degree_at_least(int m) {
    auto it = std::lower_bound(std::begin(kTable), std::end(kTable), std::max(m, 2),
                               [](const Modulus& f, int v) { return f.m < v; });
    if (it == std::end(kTable)) throw std::out_of_range("field degree " + std::to_string(m) + " exceeds table");
    return it->m;
}

Field::Field(int m) {
    const Modulus* f = table_modulus(m);
    if (!f) throw std::invalid_argument("no tabulated modulus of degree " + std::to_string(m));
#ifndef NDEBUG
    verify_once(*f);
#endif
    f_ = *f;
    init();
}

}  // namespace icsim

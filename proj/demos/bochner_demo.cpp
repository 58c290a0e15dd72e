// Copyright 2026 The qbochner Authors
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

// Walks through the d = 3 discrete Wigner function: one stabilizer state,
// one random pure state and one non-state, each judged from its
// characteristic function alone.

#include <cstdio>

#include "qbochner/certificate.hpp"
#include "qbochner/projective.hpp"
#include "qbochner/quasiprob.hpp"
#include "qbochner/states.hpp"

int main() {
    using namespace qbochner;
    const auto rep = build_representation(weyl_frame(3));

    const struct {
        const char* name;
        ComplexMatrix rho;
    } cases[] = {
        {"quadratic-phase state a=1, b=2", projector(quadratic_vector(3, 1, 2))},
        {"random pure state, seed 7", random_pure(3, 7)},
        {"diag(1.2, 0.1, -0.3)", ComplexMatrix::diagonal({1.2, 0.1, -0.3})},
    };

    for (const auto& c : cases) {
        const auto cert = certify_state(rep, c.rho);
        std::printf("%s\n", c.name);
        std::printf("  mu:");
        for (double v : cert.mu) std::printf(" %+.4f", v);
        std::printf("\n  min eig M^Q = %+.3e (%s), min eig M^C = %+.3e (%s)\n", cert.mq_min_eig,
                    to_string(cert.mq_verdict), cert.mc_min_eig, to_string(cert.mc_verdict));
        std::printf("  quantum state: %s, positively represented: %s\n\n", cert.is_quantum_state ? "yes" : "no",
                    cert.is_positively_representable ? "yes" : "no");
    }
    return 0;
}

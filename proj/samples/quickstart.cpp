// Verifies C+ at g = 7, prints its T-state and the barycenter certificate.

#include "ribsyz/stability.hpp"

#include <iostream>

int main()
{
    using namespace ribsyz;
    const Genus gen(7);

    std::cout << "dim K_{1,2} = " << koszul_cohomology_dim(gen, {1, 2}) << '\n';

    const CosyzygyFamily plus = family_plus(gen);
    const VerificationReport report = verify_monomial_basis(gen, plus);
    std::cout << "C+ has " << report.total << " members, monomial basis: " << std::boolalpha << report.verdict
              << '\n';

    std::cout << "w_T(C+) =";
    for (long long n : t_state(plus)) std::cout << ' ' << n;
    std::cout << '\n';

    const Certificate cert = verify_barycenter_lemma(gen);
    std::cout << "barycenter entry " << cert.target[0] << " = ";
    const char* names[] = {"w(C+)", "w(C-)", "w(C*)"};
    for (std::size_t i = 0; i < cert.lambdas.size(); ++i) {
        std::cout << (i ? " + " : "") << cert.lambdas[i] << ' ' << names[i];
    }
    std::cout << '\n';
}

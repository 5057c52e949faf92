// Round-trips a family through JSON, breaks it, and runs the stability loop
// from a single seed.

#include "ribsyz/io.hpp"
#include "ribsyz/stability.hpp"

#include <iostream>

int main()
{
    using namespace ribsyz;
    const Genus gen(9);

    CosyzygyFamily fam = family_from_json(to_json(family_star(gen)));
    std::cout << "C* from JSON verifies: " << std::boolalpha << verify_monomial_basis(gen, fam).verdict << '\n';

    fam.members.pop_back();
    fam.sources.pop_back();
    const VerificationReport broken = verify_monomial_basis(gen, fam);
    std::cout << "without its last member: " << broken.verdict << ", short in degree";
    for (int d : broken.failing_degrees()) std::cout << ' ' << d;
    std::cout << '\n';

    const StabilityOutcome res = torus_semistability(gen, 1, {family_plus(gen)});
    std::cout << "seeded with C+ only: " << (res.semistable() ? "semistable" : "unstable") << " after "
              << res.iterations << " iterations\n";
    std::cout << outcome_json(gen, 1, res).dump(2) << '\n';
}

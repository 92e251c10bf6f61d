#include "proglab/common.hpp"
#include "proglab/verify.hpp"

namespace proglab {

Report verify_all(uint64_t seed) {
    Report rep;
    rep.name = "verify_all";
    rep.inputs = {{"seed", seed}};
    const Rng root(seed);
    // Each module gets its own stream so adding checks to one does not reshuffle the others.
    rep.absorb(verify_arith(root.split(1).next()));
    rep.absorb(verify_signal(root.split(2).next()));
    rep.absorb(verify_gowers(root.split(3).next()));
    rep.absorb(verify_counting(root.split(4).next()));
    rep.absorb(verify_expsum(root.split(5).next()));
    rep.absorb(verify_nil(root.split(6).next()));
    return rep;
}

}  // namespace proglab

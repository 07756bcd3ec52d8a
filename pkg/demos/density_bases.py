"""Compare the density-basis criteria and transfer along maps."""
from toptrans.fintop import (CRITERIA, DensityBasis, continuous_maps, is_density_basis, map_predicates,
                             pushforward_basis, space_from_min_nbhds)

sierpinski = space_from_min_nbhds(2, [{0, 1}, {1}])
for fam in ([0b11], [0b10], [0b10, 0b11]):
    d = DensityBasis(sierpinski, fam)
    print(f"family {fam}:", {c: is_density_basis(sierpinski, d, c) for c in CRITERIA})

point = space_from_min_nbhds(1, [{0}])
for h in continuous_maps(point, sierpinski):
    f = map_predicates(h)
    if f.weakly_almost_open and f.dense_image:
        res = pushforward_basis(h, DensityBasis(point, [1]))
        print(f"push along {h.table}: verified={res.verified}")

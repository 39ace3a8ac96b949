# A tree strictly between an arc and a proper tree, built from a chained gadget.
from homorder import compare, directed_path
from homorder.checks import proper_trees
from homorder.gadgets import build_dn, check_labelled_lemma, decompose, density_witness

t2 = proper_trees(8)[0]
dec = decompose(t2)
print("branch vertex", dec.x, "with in-neighbours", dec.u, dec.w, "reversed:", dec.flipped)
print("pieces U/X/W:", len(dec.U), len(dec.X), len(dec.W))

# The six labelled vertices of each block never collapse under a
# homomorphism into a tree that does not receive t2.
d1, d3 = build_dn(dec, 1), build_dn(dec, 3)
r = check_labelled_lemma(d1, d3.tree)
print(f"D1 -> D3: {r.hom_count} homomorphisms, labels injective: {r.all_injective}")

t1 = directed_path(1)
cert = density_witness(t1, t2)
print("witness has", len(cert.witness), "vertices; params", cert.params)
print("t1 vs witness:", compare(t1, cert.witness))
print("witness vs t2:", compare(cert.witness, t2))
for fact, (solver, oracle) in cert.verify().items():
    print(f"  {fact}: solver {'ok' if solver else 'FAIL'}, oracle {oracle}")

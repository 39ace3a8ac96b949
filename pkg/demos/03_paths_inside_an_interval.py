# Oriented paths keep their order after every arc is replaced by a tree gadget.
from homorder import directed_path, oriented_path
from homorder.checks import proper_trees
from homorder.embedding import build_gadget, phi, verify_interval_embedding

t1, t2 = directed_path(1), proper_trees(8)[0]
gadget = build_gadget(t1, t2)  # takes a few seconds
print("gadget:", len(gadget.tree), "vertices")
for k, v in gadget.provenance.items():
    print(f"  {k} = {v}")

words = ["F", "FF", "FFF", "FFBFF", "FFFBFF", "FFBFFF"]
paths = [oriented_path(w) for w in words]
print("image of FFBFF has", len(phi(paths[3], gadget)), "vertices")

report = verify_interval_embedding(paths, t1, t2, gadget)
for i, j, rp, rf in report.pairs:
    if i < j:
        print(f"  {words[i]:7} vs {words[j]:7}: paths {rp}, images {rf}")
print("all match:", report.all_match, " all inside the interval:", report.interval_ok)

# Cores of oriented trees, and the first tree whose core is not a path.
from homorder import compare, core, is_proper_tree, is_rigid, oriented_path, parse_digraph, serialize
from homorder.enumerate import count_trees, enumerate_trees, tree_code

# A zig-zag folds onto a single arc.
z = oriented_path("FBFBF")
print("zig-zag FBFBF has core with", len(core(z)), "vertices")

# Two arcs into one vertex collapse, the outgoing one survives.
star = parse_digraph("u x\nw x\nx v")
print("star core:")
print(serialize(core(star)), end="")
print("star vs its core:", compare(star, core(star)))

# Counting trees by size.
for n in range(1, 9):
    print(f"{n} vertices: {count_trees(n)} oriented trees")

# Scan for trees whose core is not a path.
for n in range(1, 9):
    found = [t for t in enumerate_trees(n, n) if is_proper_tree(t)]
    if found:
        print(f"first proper trees have {n} vertices ({len(found)} of them)")
        for t in found:
            print(" ", tree_code(t), "rigid core:", is_rigid(core(t)))
        break

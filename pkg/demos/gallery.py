"""Print the coarse-boundedness trichotomy for a gallery of surfaces.

    python3 demos/gallery.py
"""

from endspace import classify, parse_surface

GALLERY = [
    ("Loch Ness monster", "surface genus=inf ends=pt g"),
    ("Jacob's ladder", "surface genus=inf ends=sum(pt g, pt g)"),
    ("Cantor tree", "surface genus=0 ends=cantor"),
    ("blooming Cantor tree", "surface genus=inf ends=cantor g"),
    ("flute", "surface genus=0 ends=ord(1,1,none)"),
    ("two limit points", "surface genus=0 ends=ord(w,2,none)"),
    ("telescoping", "surface genus=inf ends=line(sum(cantor g, cantor), g, g)"),
    ("genus 2, Cantor ends", "surface genus=2 ends=cantor"),
    ("non-tame pair", "surface genus=0 ends=line(fan(bloom(pt), one), !g, !g)"),
]


def main():
    width = max(len(name) for name, _ in GALLERY)
    print(f"{'surface':<{width}}  local    gen      global")
    for name, text in GALLERY:
        v = classify(parse_surface(text))
        print(f"{name:<{width}}  {v.locally_cb:<8} {v.cb_generated:<8} {v.globally_cb}")


if __name__ == "__main__":
    main()

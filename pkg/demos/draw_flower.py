"""Validate flower configurations from radii and render them as SVG files."""

from fractions import Fraction

from flowerlab.geometry import FlowerConfig, layout, render_svg, validate_flower

F = Fraction

CONFIGS = {
    "integer_flower": FlowerConfig(F(6), (F(69), F(46), F(23))),
    "right_angle_flower": FlowerConfig(F(1), (F(2), F(3), F(2), F(3))),
}


def main() -> None:
    for name, config in CONFIGS.items():
        report = validate_flower(config)
        petals = ", ".join(str(p) for p in config.petals)
        print(f"{name}: center {config.center}, petals ({petals})")
        print("  cosines:", ", ".join(report.to_obj()["cosines"]))
        print("  exact variety residual:", report.variety_residual,
              "| angle-sum residual:", f"{report.angle_sum_residual:.2e}")
        if not report.valid:
            print("  not a flower:", "; ".join(report.reasons))
            continue
        path = f"{name}.svg"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(layout(config)))
        print("  wrote", path)

    bad = FlowerConfig(F(1), (F(1), F(1), F(1)))
    report = validate_flower(bad)
    print("unit triple:", "; ".join(report.reasons))


if __name__ == "__main__":
    main()

"""CSV tables and minimal SVG line plots."""

import csv
import math


def fmt(value):
    if value is None:
        return "NA"
    if isinstance(value, float):
        value = float(value)
        if math.isnan(value):
            return "NA"
        return repr(value)
    return str(value)


def write_csv(path, columns, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(row.get(c)) for c in columns])


def svg_plot(path, series, xlabel, ylabel, title="", width=640, height=400):
    """Write polylines for ``series`` = [(label, xs, ys), ...].

    Non-finite points are skipped. Only polylines and text are emitted.
    """
    pad = 60
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys) if _finite(x) and _finite(y)]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    axes = f"{pad},{pad} {pad},{height - pad} {width - pad},{height - pad}"
    out.append(f'<polyline points="{axes}" fill="none" stroke="black"/>')
    out.append(f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="15" y="{height / 2}" transform="rotate(-90 15 {height / 2})" '
               f'text-anchor="middle">{ylabel}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="25" text-anchor="middle">{title}</text>')
    out.append(f'<text x="{pad}" y="{height - pad + 18}" text-anchor="middle">{x0:.4g}</text>')
    out.append(f'<text x="{width - pad}" y="{height - pad + 18}" text-anchor="middle">{x1:.4g}</text>')
    out.append(f'<text x="{pad - 5}" y="{height - pad}" text-anchor="end">{y0:.4g}</text>')
    out.append(f'<text x="{pad - 5}" y="{pad}" text-anchor="end">{y1:.4g}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = colors[i % len(colors)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys) if _finite(x) and _finite(y))
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}"/>')
        out.append(f'<text x="{width - pad}" y="{pad + 16 * (i + 1)}" text-anchor="end" fill="{color}">{label}</text>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")


def _finite(v):
    return v is not None and isinstance(v, (int, float)) and math.isfinite(v)

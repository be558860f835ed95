// SVG board rendering: points colored by sign, connecting lines clipped to
// the padded bounding box, hover highlighting with the incidence count.

import { lineKeyId, type LineInfo, type SessionState, type WireInt } from "./api.js";
import { clipLine, dataBox, makeTransform, toNumber } from "./geometry.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 720;
const HEIGHT = 540;

export interface RenderCallbacks {
  onLineClick: (key: WireInt[]) => void;
}

export class BoardRenderer {
  private highlighted: string | null = null;

  constructor(
    private host: HTMLElement,
    private callbacks: RenderCallbacks,
  ) {}

  render(state: SessionState, hintKey: WireInt[] | null): void {
    this.host.innerHTML = "";
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("class", "board");

    const coords = state.points.map((p) => [toNumber(p[0] ?? 0), toNumber(p[1] ?? 0)]);
    const box = dataBox(coords);
    const tf = makeTransform(box, WIDTH, HEIGHT);
    const hintId = hintKey ? lineKeyId(hintKey) : null;

    for (const line of state.lines) {
      const seg = clipLine(
        toNumber(line.key[0] ?? 0),
        toNumber(line.key[1] ?? 0),
        toNumber(line.key[2] ?? 0),
        box,
      );
      if (!seg) continue;
      const [p, q] = seg;
      const [x1, y1] = tf(p[0] ?? 0, p[1] ?? 0);
      const [x2, y2] = tf(q[0] ?? 0, q[1] ?? 0);
      const el = document.createElementNS(SVG_NS, "line");
      el.setAttribute("x1", String(x1));
      el.setAttribute("y1", String(y1));
      el.setAttribute("x2", String(x2));
      el.setAttribute("y2", String(y2));
      const id = lineKeyId(line.key);
      let cls = "connecting";
      if (id === hintId) cls += " hint";
      if (id === this.highlighted) cls += " active";
      el.setAttribute("class", cls);
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `[${line.key.join(", ")}] through ${line.points.length} points`;
      el.appendChild(title);
      el.addEventListener("click", () => this.callbacks.onLineClick(line.key));
      el.addEventListener("mouseenter", () => {
        this.highlighted = id;
        el.classList.add("active");
      });
      el.addEventListener("mouseleave", () => {
        this.highlighted = null;
        el.classList.remove("active");
      });
      svg.appendChild(el);
    }

    state.points.forEach((point, i) => {
      const [cx, cy] = tf(toNumber(point[0] ?? 0), toNumber(point[1] ?? 0));
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(cx));
      circle.setAttribute("cy", String(cy));
      circle.setAttribute("r", "7");
      circle.setAttribute("class", state.weights[i] === 1 ? "point on" : "point off");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `p${i} = (${point[0]}, ${point[1]}), weight ${state.weights[i]}`;
      circle.appendChild(title);
      svg.appendChild(circle);
    });

    this.host.appendChild(svg);
  }

  static describeLine(line: LineInfo): string {
    return `[${line.key.join(", ")}] (${line.points.length} points)`;
  }
}

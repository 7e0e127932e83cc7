// Force-directed rendering of the attack graph with d3.

import * as d3 from "d3";

import type { NodeView } from "./labelview";
import type { GraphPayload } from "./types";

interface SimNode extends d3.SimulationNodeDatum {
  id: string;
  shape: string;
  curator: string;
  text: string;
}

interface SimLink extends d3.SimulationLinkDatum<SimNode> {
  kind: "attack" | "order";
}

export class GraphView {
  private svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private simulation: d3.Simulation<SimNode, SimLink> | null = null;
  private nodes: SimNode[] = [];
  private nodeSel: d3.Selection<SVGGElement, SimNode, SVGGElement, unknown> | null = null;
  private views = new Map<string, NodeView>();

  constructor(container: HTMLElement, private width = 760, private height = 460) {
    this.svg = d3
      .select(container)
      .append("svg")
      .attr("viewBox", `0 0 ${width} ${height}`)
      .attr("class", "graph-svg");
    const defs = this.svg.append("defs");
    defs
      .append("marker")
      .attr("id", "arrow")
      .attr("viewBox", "0 -5 10 10")
      .attr("refX", 24)
      .attr("refY", 0)
      .attr("markerWidth", 7)
      .attr("markerHeight", 7)
      .attr("orient", "auto")
      .append("path")
      .attr("d", "M0,-5L10,0L0,5")
      .attr("fill", "#555");
  }

  render(graph: GraphPayload, views: NodeView[]): void {
    this.svg.selectAll("g.layer").remove();
    this.simulation?.stop();
    this.views = new Map(views.map((view) => [view.label, view]));

    const stepInfo = new Map(graph.steps.map((step) => [step.label, step]));
    this.nodes = graph.arguments.map((id) => ({
      id,
      shape: stepInfo.get(id)?.shape ?? "oval",
      curator: stepInfo.get(id)?.curator ?? "",
      text: stepInfo.get(id)?.text ?? id,
    }));
    const byId = new Map(this.nodes.map((node) => [node.id, node]));
    const links: SimLink[] = [
      ...graph.attacks.map(([s, t]) => ({ source: byId.get(s)!, target: byId.get(t)!, kind: "attack" as const })),
      ...graph.order_edges.map(([s, t]) => ({ source: byId.get(s)!, target: byId.get(t)!, kind: "order" as const })),
    ];

    const linkLayer = this.svg.append("g").attr("class", "layer links");
    const linkSel = linkLayer
      .selectAll("line")
      .data(links)
      .join("line")
      .attr("stroke", "#555")
      .attr("stroke-width", 1.2)
      .attr("stroke-dasharray", (d) => (d.kind === "order" ? "5,4" : null))
      .attr("marker-end", (d) => (d.kind === "attack" ? "url(#arrow)" : null))
      .attr("opacity", (d) => (d.kind === "order" ? 0.5 : 0.9));

    const nodeLayer = this.svg.append("g").attr("class", "layer nodes");
    this.nodeSel = nodeLayer
      .selectAll<SVGGElement, SimNode>("g")
      .data(this.nodes)
      .join("g")
      .attr("class", "node")
      .call(
        d3
          .drag<SVGGElement, SimNode>()
          .on("start", (event, d) => {
            if (!event.active) this.simulation?.alphaTarget(0.25).restart();
            d.fx = d.x;
            d.fy = d.y;
          })
          .on("drag", (event, d) => {
            d.fx = event.x;
            d.fy = event.y;
          })
          .on("end", (event, d) => {
            if (!event.active) this.simulation?.alphaTarget(0);
            d.fx = null;
            d.fy = null;
          }),
      );

    this.nodeSel.each((d, i, groups) => {
      const group = d3.select(groups[i]);
      if (d.shape === "box") {
        group.append("rect").attr("x", -16).attr("y", -13).attr("width", 32).attr("height", 26).attr("rx", 3);
      } else {
        group.append("ellipse").attr("rx", 17).attr("ry", 13);
      }
      group.append("title").text(`${d.id}: ${d.text} (${d.curator})`);
      group
        .append("text")
        .attr("class", "node-label")
        .attr("text-anchor", "middle")
        .attr("dy", "0.33em");
    });
    this.recolor(views);

    this.simulation = d3
      .forceSimulation(this.nodes)
      .force("charge", d3.forceManyBody().strength(-260))
      .force("center", d3.forceCenter(this.width / 2, this.height / 2))
      .force(
        "link",
        d3
          .forceLink<SimNode, SimLink>(links)
          .distance((d) => (d.kind === "order" ? 70 : 110))
          .strength((d) => (d.kind === "order" ? 0.35 : 0.2)),
      )
      .force("collide", d3.forceCollide(26))
      .on("tick", () => {
        linkSel
          .attr("x1", (d) => (d.source as SimNode).x!)
          .attr("y1", (d) => (d.source as SimNode).y!)
          .attr("x2", (d) => (d.target as SimNode).x!)
          .attr("y2", (d) => (d.target as SimNode).y!);
        this.nodeSel!.attr("transform", (d) => `translate(${d.x},${d.y})`);
      });
  }

  /** Update fills and glyphs without restarting the layout. */
  recolor(views: NodeView[]): void {
    this.views = new Map(views.map((view) => [view.label, view]));
    if (!this.nodeSel) return;
    this.nodeSel
      .selectAll<SVGElement, SimNode>("rect, ellipse")
      .attr("fill", (d) => this.views.get(d.id)?.color ?? "#ddd")
      .attr("stroke", "#333");
    this.nodeSel
      .selectAll<SVGTextElement, SimNode>("text.node-label")
      .text((d) => `${d.id}${this.views.get(d.id)?.glyph ?? ""}`);
  }
}

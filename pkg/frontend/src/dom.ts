// Browser rendering. Everything here is presentation: state transitions
// and network traffic live in AppController, which this module only calls.

import { ACTION_LABELS } from "./actions.js";
import type { AppController, UiState } from "./state.js";
import { buildCloud, buildScene, colorFor, type SceneNode } from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 900;
const HEIGHT = 600;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mountApp(root: HTMLElement, controller: AppController): void {
  root.textContent = "";

  const banner = el("div", "banner hidden");
  const toolbar = el("div", "toolbar");
  const modeBtn = el("button", "", "List mode");
  const viewBtn = el("button", "", "Personal view");
  const whoami = el("span", "whoami");
  toolbar.append(modeBtn, viewBtn, whoami);

  const cloudPanel = el("div", "cloud");
  const main = el("div", "main");
  const canvasWrap = el("div", "canvas-wrap");
  const listWrap = el("div", "list-wrap hidden");
  main.append(cloudPanel, canvasWrap, listWrap);

  const dialogHost = el("div", "dialog-host hidden");
  root.append(banner, toolbar, main, dialogHost);

  modeBtn.addEventListener("click", () => void controller.toggleMode());
  viewBtn.addEventListener("click", () => void controller.toggleView());

  let dragSource: SceneNode | null = null;

  function renderCloud(state: UiState): void {
    cloudPanel.textContent = "";
    const selected = new Set(state.selectedTags);
    for (const entry of buildCloud(state.cloud, selected)) {
      const a = el("a", entry.selected ? "cloud-tag selected" : "cloud-tag", entry.label);
      a.style.fontSize = `${entry.size}px`;
      a.href = "#";
      a.addEventListener("click", (ev) => {
        ev.preventDefault();
        void controller.selectTag(entry.label);
      });
      cloudPanel.append(a, document.createTextNode(" "));
    }
  }

  function renderGraph(state: UiState): void {
    canvasWrap.textContent = "";
    if (!state.graph) {
      canvasWrap.append(
        el("p", "empty-hint", "Select a tag from the cloud to draw its context."),
      );
      return;
    }
    const scene = buildScene(state.graph, WIDTH, HEIGHT);
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("class", "graph");

    for (const edge of scene.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(edge.x1));
      line.setAttribute("y1", String(edge.y1));
      line.setAttribute("x2", String(edge.x2));
      line.setAttribute("y2", String(edge.y2));
      line.setAttribute("class", "edge");
      svg.append(line);
    }

    for (const sn of scene.nodes) {
      const g = document.createElementNS(SVG_NS, "g");
      g.setAttribute("transform", `translate(${sn.x},${sn.y})`);
      g.setAttribute("class", "node");
      if (sn.shape === "circle") {
        const c = document.createElementNS(SVG_NS, "circle");
        c.setAttribute("r", String(10 + Math.min(10, sn.node.weight * 2)));
        c.setAttribute("fill", sn.color);
        g.append(c);
      } else {
        const w = Math.max(34, sn.label.length * 7 + 10);
        const rect = document.createElementNS(SVG_NS, "rect");
        rect.setAttribute("x", String(-w / 2));
        rect.setAttribute("y", "-11");
        rect.setAttribute("width", String(w));
        rect.setAttribute("height", "22");
        rect.setAttribute("rx", "8");
        rect.setAttribute("fill", sn.color);
        g.append(rect);
      }
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("y", sn.shape === "circle" ? "26" : "4");
      label.setAttribute("text-anchor", "middle");
      label.textContent = sn.label;
      g.append(label);
      if (sn.node.is_center) g.classList.add("center");

      g.addEventListener("pointerdown", () => {
        dragSource = sn;
      });
      g.addEventListener("pointerup", (ev) => {
        if (dragSource && dragSource.key !== sn.key) {
          ev.stopPropagation();
          void controller.dragNode(dragSource.node, sn.node);
        }
        dragSource = null;
      });
      g.addEventListener("click", (ev) => {
        ev.stopPropagation();
        controller.openMenu(sn.node);
        showMenu(ev.clientX, ev.clientY);
      });
      svg.append(g);
    }
    svg.addEventListener("pointerup", () => {
      dragSource = null;
    });
    canvasWrap.append(svg);
  }

  const menuHost = el("div", "menu-host hidden");
  root.append(menuHost);

  function showMenu(x: number, y: number): void {
    const state = controller.state;
    menuHost.textContent = "";
    if (!state.menu) return;
    const list = el("ul", "menu");
    for (const action of state.menu.actions) {
      const item = el("li", "", ACTION_LABELS[action]);
      item.addEventListener("click", () => {
        menuHost.classList.add("hidden");
        void controller.runAction(state.menu!.node, action);
      });
      list.append(item);
    }
    menuHost.append(list);
    menuHost.style.left = `${x}px`;
    menuHost.style.top = `${y}px`;
    menuHost.classList.remove("hidden");
  }

  document.addEventListener("click", (ev) => {
    if (!menuHost.classList.contains("hidden") && !menuHost.contains(ev.target as Node)) {
      menuHost.classList.add("hidden");
      if (controller.state.menu) controller.dismissMenu();
    }
  });

  function renderList(state: UiState): void {
    listWrap.textContent = "";
    const table = el("table", "resources");
    for (const row of state.resources) {
      const tr = el("tr");
      const link = el("a", "", row.title ?? row.url);
      link.setAttribute("href", row.url);
      link.setAttribute("target", "_blank");
      const tdTitle = el("td");
      tdTitle.append(link);
      tr.append(tdTitle, el("td", "weight", String(row.weight)));
      table.append(tr);
    }
    listWrap.append(table);
  }

  function renderEditor(state: UiState): void {
    dialogHost.textContent = "";
    if (!state.editor) {
      dialogHost.classList.add("hidden");
      return;
    }
    const ed = state.editor;
    const box = el("div", "dialog");
    box.append(
      el(
        "h3",
        "",
        state.coldStartUrl
          ? "Nobody has tagged this page yet. Be the first:"
          : "Customize recommended tags",
      ),
    );
    box.append(el("p", "dialog-url", ed.url));
    const tagRow = el("div", "tag-checks");
    const union = [...new Set([...ed.suggested, ...ed.tags])];
    for (const tag of union) {
      const lab = el("label");
      const cb = el("input") as HTMLInputElement;
      cb.type = "checkbox";
      cb.checked = ed.tags.includes(tag);
      cb.addEventListener("change", () => controller.toggleEditorTag(tag));
      lab.append(cb, document.createTextNode(` ${tag}`));
      tagRow.append(lab);
    }
    const extra = el("input") as HTMLInputElement;
    extra.placeholder = "add a tag and press enter";
    extra.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter" && extra.value.trim()) {
        controller.toggleEditorTag(extra.value.trim().toLowerCase());
        extra.value = "";
      }
    });
    const confirm = el("button", "primary", "Save");
    confirm.addEventListener("click", () => void controller.confirmEditor());
    const cancel = el("button", "", "Cancel");
    cancel.addEventListener("click", () => controller.cancelEditor());
    box.append(tagRow, extra, el("div", "dialog-buttons"));
    box.lastElementChild!.append(confirm, cancel);
    dialogHost.append(box);
    dialogHost.classList.remove("hidden");
  }

  controller.subscribe((state) => {
    banner.textContent = state.banner ?? "";
    banner.classList.toggle("hidden", state.banner === null);
    modeBtn.textContent = state.mode === "viz" ? "List mode" : "Network mode";
    viewBtn.textContent = state.view === "personal" ? "Social view" : "Personal view";
    viewBtn.style.borderColor = colorFor(state.view === "personal" ? "local" : "global");
    canvasWrap.classList.toggle("hidden", state.mode !== "viz");
    listWrap.classList.toggle("hidden", state.mode !== "list");
    renderCloud(state);
    if (state.mode === "viz") renderGraph(state);
    else renderList(state);
    renderEditor(state);
    if (!state.menu) menuHost.classList.add("hidden");
  });
}

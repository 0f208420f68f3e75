// UI state machine.
//
// Every public method here is one user gesture and emits exactly one
// interaction event, stamped with the mode the user was in when they acted.
// Data fetches that fail roll the state back and surface a banner; the
// event still counts because the gesture still happened.

import { ApiClient, ApiError } from "./api.js";
import { dragOutcome, menuFor, type NodeAction } from "./actions.js";
import { EventBatcher } from "./events.js";
import type {
  ActionName,
  ContextGraphDto,
  FilterQuery,
  GraphNodeDto,
  ModeName,
  ResourceRowDto,
  SizedTagDto,
  ViewName,
} from "./types.js";

export interface EditorState {
  url: string;
  title: string | null;
  /** Currently checked tags, freely editable before confirm. */
  tags: string[];
  /** What the recommender proposed, for "suggested" styling. */
  suggested: string[];
  /** True when confirm must create the annotation rather than amend it. */
  pendingAdd: boolean;
  /** Bookmarklet-style flows land on the personal view after confirm. */
  showPersonalOnConfirm: boolean;
}

export interface MenuState {
  node: GraphNodeDto;
  actions: NodeAction[];
}

export interface UiState {
  mode: ModeName;
  view: ViewName;
  selectedTags: string[];
  /** Resource the graph is centered on, when centering came from a node
   * or the bookmarklet rather than the tag cloud. */
  resourceCenter: string | null;
  filter: FilterQuery;
  graph: ContextGraphDto | null; // populated only in viz mode
  cloud: SizedTagDto[];
  resources: ResourceRowDto[];
  menu: MenuState | null;
  editor: EditorState | null;
  /** URL nobody has tagged yet: show the manual tagging form. */
  coldStartUrl: string | null;
  banner: string | null;
}

export function initialState(): UiState {
  return {
    mode: "viz",
    view: "social",
    selectedTags: [],
    resourceCenter: null,
    filter: {},
    graph: null,
    cloud: [],
    resources: [],
    menu: null,
    editor: null,
    coldStartUrl: null,
    banner: null,
  };
}

export interface ControllerDeps {
  api: ApiClient;
  batcher: EventBatcher;
  openUrl?: (url: string) => void;
  promptText?: (message: string, initial: string) => string | null;
}

const WIDE: FilterQuery = { depth: 1, maxNeighbors: 500, maxNodes: 500 };

function messageOf(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

export class AppController {
  state: UiState = initialState();
  private api: ApiClient;
  private batcher: EventBatcher;
  private openUrl: (url: string) => void;
  private promptText: (message: string, initial: string) => string | null;
  private listeners: Array<(state: UiState) => void> = [];
  private fetchGen = 0;

  constructor(deps: ControllerDeps) {
    this.api = deps.api;
    this.batcher = deps.batcher;
    this.openUrl = deps.openUrl ?? (() => undefined);
    this.promptText = deps.promptText ?? (() => null);
  }

  subscribe(fn: (state: UiState) => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private gesture(action: ActionName, mode?: ModeName): void {
    this.batcher.emit(mode ?? this.state.mode, action);
  }

  /** Encoded center list for /api/context, resource center first. */
  centers(): string[] {
    const out: string[] = [];
    if (this.state.resourceCenter) out.push(`url:${this.state.resourceCenter}`);
    for (const tag of this.state.selectedTags) out.push(`tag:${tag}`);
    return out;
  }

  private async refreshData(): Promise<void> {
    const gen = ++this.fetchGen;
    const scope = this.state.view === "personal" ? "personal" : "global";
    const cloud = await this.api.cloud(scope);
    let graph: ContextGraphDto | null = null;
    let resources: ResourceRowDto[] = this.state.resources;
    if (this.state.mode === "viz") {
      const centers = this.centers();
      graph = centers.length
        ? await this.api.context(centers, this.state.view, this.state.filter)
        : null;
    } else {
      resources = await this.api.resources(this.state.selectedTags, scope);
    }
    if (gen !== this.fetchGen) return; // a newer selection superseded this fetch
    this.state.cloud = cloud;
    this.state.graph = this.state.mode === "viz" ? graph : null;
    this.state.resources = resources;
  }

  /** Initial data load; a page load is not a gesture, so no event. */
  async start(): Promise<void> {
    try {
      await this.refreshData();
    } catch (err) {
      this.state.banner = messageOf(err);
    }
    this.notify();
  }

  private async applyGesture(
    action: ActionName,
    work: () => Promise<void>,
    mode?: ModeName,
  ): Promise<void> {
    this.gesture(action, mode);
    const prior = structuredClone(this.state);
    try {
      await work();
      this.state.banner = null;
    } catch (err) {
      this.state = prior;
      this.state.banner = messageOf(err);
    }
    this.notify();
  }

  // -- gestures ---------------------------------------------------------------

  async selectTag(tag: string): Promise<void> {
    const known =
      this.state.cloud.some((s) => s.label === tag) ||
      (this.state.graph?.nodes ?? []).some((n) => n.kind === "tag" && n.id === tag);
    if (!known && !this.state.selectedTags.includes(tag)) {
      throw new Error(`tag ${JSON.stringify(tag)} not offered by the current cloud`);
    }
    await this.applyGesture("tag_select", async () => {
      const had = this.state.selectedTags.includes(tag);
      this.state.selectedTags = had
        ? this.state.selectedTags.filter((t) => t !== tag)
        : [...this.state.selectedTags, tag];
      this.state.menu = null;
      await this.refreshData();
    });
  }

  async toggleView(): Promise<void> {
    await this.applyGesture("view_switch", async () => {
      this.state.view = this.state.view === "personal" ? "social" : "personal";
      this.state.menu = null;
      await this.refreshData();
    });
  }

  async toggleMode(): Promise<void> {
    const leaving = this.state.mode;
    await this.applyGesture(
      "mode_switch",
      async () => {
        this.state.mode = leaving === "viz" ? "list" : "viz";
        this.state.menu = null;
        await this.refreshData();
      },
      leaving,
    );
  }

  async changeFilter(filter: FilterQuery): Promise<void> {
    await this.applyGesture("filter_change", async () => {
      this.state.filter = { ...this.state.filter, ...filter };
      await this.refreshData();
    });
  }

  /** Opening a node's context menu is a gesture but not a content one. */
  openMenu(node: GraphNodeDto): void {
    this.requireInGraph(node);
    this.gesture("other");
    this.state.menu = { node, actions: menuFor(node.kind, node.locality) };
    this.notify();
  }

  dismissMenu(): void {
    this.gesture("other");
    this.state.menu = null;
    this.notify();
  }

  private requireInGraph(node: GraphNodeDto): void {
    const nodes = this.state.graph?.nodes ?? [];
    if (!nodes.some((n) => n.kind === node.kind && n.id === node.id)) {
      throw new Error(`node ${node.kind}:${node.id} is not in the current graph`);
    }
  }

  async runAction(
    node: GraphNodeDto,
    action: NodeAction,
    input?: { text?: string; tags?: string[] },
  ): Promise<void> {
    this.requireInGraph(node);
    if (!menuFor(node.kind, node.locality).includes(action)) {
      throw new Error(`${action} is not offered for ${node.kind}:${node.locality}`);
    }
    this.state.menu = null;

    switch (action) {
      case "open_url":
        this.gesture("resource_select");
        this.openUrl(node.id);
        this.notify();
        return;

      case "center_here":
        await this.applyGesture(
          node.kind === "tag" ? "tag_select" : "resource_select",
          async () => {
            if (node.kind === "tag") {
              this.state.resourceCenter = null;
              this.state.selectedTags = [node.id];
            } else {
              this.state.resourceCenter = node.id;
              this.state.selectedTags = [];
            }
            await this.refreshData();
          },
        );
        return;

      case "edit_title": {
        const text =
          input?.text ?? this.promptText("New title", node.title ?? "");
        await this.applyGesture("edit", async () => {
          if (text !== null) {
            await this.api.setTitle(node.id, text);
            await this.refreshData();
          }
        });
        return;
      }

      case "change_tags": {
        if (input?.tags) {
          await this.applyGesture("edit", async () => {
            await this.api.setTags(node.id, input.tags!);
            await this.refreshData();
          });
          return;
        }
        // open the editor pre-filled with what the viewer already has
        this.gesture("edit");
        try {
          const current = await this.myTagsOn(node.id);
          this.state.editor = {
            url: node.id,
            title: node.title,
            tags: current,
            suggested: [],
            pendingAdd: false,
            showPersonalOnConfirm: false,
          };
          this.state.banner = null;
        } catch (err) {
          this.state.banner = messageOf(err);
        }
        this.notify();
        return;
      }

      case "remove":
        await this.applyGesture("remove", async () => {
          if (node.kind === "resource") {
            await this.api.deleteResource(node.id);
          } else {
            await this.removeTagEverywhere(node.id);
          }
          await this.refreshData();
        });
        return;

      case "add_to_collection":
        if (node.kind === "resource") {
          await this.applyGesture("add", async () => {
            const scored = await this.api.recommend(node.id);
            const suggested = scored.map((s) => s.label);
            if (suggested.length === 0) {
              // nothing to pre-check: fall back to the manual form
              this.state.editor = {
                url: node.id,
                title: node.title,
                tags: [],
                suggested: [],
                pendingAdd: true,
                showPersonalOnConfirm: true,
              };
              return;
            }
            await this.api.addAnnotation(node.id, suggested, node.title ?? undefined);
            this.state.editor = {
              url: node.id,
              title: node.title,
              tags: [...suggested],
              suggested,
              pendingAdd: false,
              showPersonalOnConfirm: true,
            };
            await this.refreshData();
          });
        } else {
          // adopting a tag bookmarks its strongest resource under that tag
          await this.applyGesture("add", async () => {
            const rows = await this.api.resources([node.id], "global");
            if (rows.length === 0) throw new Error(`no resources carry ${node.id}`);
            await this.api.addAnnotation(
              rows[0].url,
              [node.id],
              rows[0].title ?? undefined,
            );
            await this.refreshData();
          });
        }
        return;

      case "rename_tag": {
        const text = input?.text ?? this.promptText("Rename tag", node.id);
        await this.applyGesture("edit", async () => {
          if (text !== null) {
            await this.api.renameTag(node.id, text);
            if (this.state.selectedTags.includes(node.id)) {
              this.state.selectedTags = this.state.selectedTags.map((t) =>
                t === node.id ? text : t,
              );
            }
            await this.refreshData();
          }
        });
        return;
      }
    }
  }

  /** The viewer's own tags on a resource, via a depth-1 personal context. */
  private async myTagsOn(url: string): Promise<string[]> {
    const graph = await this.api.context([`url:${url}`], "personal", WIDE);
    return graph.nodes.filter((n) => n.kind === "tag" && !n.is_center).map((n) => n.id);
  }

  /** Strip a tag from every resource the viewer filed under it. */
  private async removeTagEverywhere(tag: string): Promise<void> {
    const rows = await this.api.resources([tag], "personal");
    for (const row of rows) {
      const mine = await this.myTagsOn(row.url);
      const rest = mine.filter((t) => t !== tag);
      if (rest.length > 0) {
        await this.api.setTags(row.url, rest);
      } else {
        await this.api.deleteResource(row.url);
      }
    }
    this.state.selectedTags = this.state.selectedTags.filter((t) => t !== tag);
  }

  async dragNode(dragged: GraphNodeDto, target: GraphNodeDto): Promise<void> {
    this.requireInGraph(dragged);
    this.requireInGraph(target);
    if (dragOutcome(dragged.kind, target.kind) === "unsupported") {
      // visual snap-back only; no request leaves the client
      this.gesture("other");
      this.notify();
      return;
    }
    const resource = dragged.kind === "resource" ? dragged : target;
    const tag = dragged.kind === "tag" ? dragged : target;
    await this.applyGesture("add", async () => {
      await this.api.addAnnotation(resource.id, [tag.id], resource.title ?? undefined);
      await this.refreshData();
    });
  }

  // -- editor -----------------------------------------------------------------

  /** Checkbox/typing inside the editor composes the confirm gesture, so
   * toggling emits nothing by itself. */
  toggleEditorTag(tag: string): void {
    const ed = this.state.editor;
    if (!ed) throw new Error("no editor open");
    ed.tags = ed.tags.includes(tag)
      ? ed.tags.filter((t) => t !== tag)
      : [...ed.tags, tag];
    this.notify();
  }

  async confirmEditor(): Promise<void> {
    const ed = this.state.editor;
    if (!ed) throw new Error("no editor open");
    await this.applyGesture("edit", async () => {
      if (ed.pendingAdd) {
        await this.api.addAnnotation(ed.url, ed.tags, ed.title ?? undefined);
      } else {
        await this.api.setTags(ed.url, ed.tags);
      }
      this.state.editor = null;
      this.state.coldStartUrl = null;
      if (ed.showPersonalOnConfirm) {
        this.state.view = "personal";
        this.state.mode = "viz";
        this.state.resourceCenter = ed.url;
        this.state.selectedTags = [];
      }
      await this.refreshData();
    });
  }

  cancelEditor(): void {
    this.gesture("other");
    this.state.editor = null;
    this.notify();
  }

  // -- bookmarklet landing ------------------------------------------------------

  /** Page load for /app/context?url=...; not a gesture, so no event. */
  async landFromBookmarklet(url: string): Promise<void> {
    this.state.mode = "viz";
    this.state.view = "social";
    this.state.selectedTags = [];
    this.state.resourceCenter = url;
    try {
      await this.refreshData();
      const center = this.state.graph?.nodes.find(
        (n) => n.is_center && n.kind === "resource",
      );
      if (center) this.state.resourceCenter = center.id; // canonical form
    } catch (err) {
      if (err instanceof ApiError && err.code === "unknown_center") {
        // nobody has tagged this page yet: manual tagging form
        this.state.resourceCenter = null;
        this.state.graph = null;
        this.state.coldStartUrl = url;
        this.state.editor = {
          url,
          title: null,
          tags: [],
          suggested: [],
          pendingAdd: true,
          showPersonalOnConfirm: true,
        };
        try {
          this.state.cloud = await this.api.cloud("global");
        } catch {
          // cloud is decoration here; the form still works without it
        }
      } else {
        this.state.banner = messageOf(err);
      }
    }
    this.notify();
  }

  async flushEvents(): Promise<void> {
    await this.batcher.flush();
  }
}

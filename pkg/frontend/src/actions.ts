// Node action menus and the drag-drop rule.
//
// This table must stay in lockstep with the server's menu logic: the UI
// never offers a mutation it cannot execute, so local items get the full
// menu and global ones only additive actions.

import type { Locality, NodeKind } from "./types.js";

export type NodeAction =
  | "open_url"
  | "edit_title"
  | "change_tags"
  | "remove"
  | "add_to_collection"
  | "rename_tag"
  | "center_here";

const MENU: Record<`${NodeKind}:${Locality}`, NodeAction[]> = {
  "resource:local": ["open_url", "edit_title", "change_tags", "remove", "center_here"],
  "resource:global": ["open_url", "add_to_collection", "center_here"],
  "tag:local": ["center_here", "rename_tag", "remove"],
  "tag:global": ["center_here", "add_to_collection"],
};

export function menuFor(kind: NodeKind, locality: Locality): NodeAction[] {
  return [...MENU[`${kind}:${locality}`]];
}

export type DragOutcome = "tagged" | "unsupported";

/** Resource-onto-tag (either direction) tags the resource; anything else
 * snaps back. */
export function dragOutcome(dragged: NodeKind, target: NodeKind): DragOutcome {
  return dragged !== target ? "tagged" : "unsupported";
}

/** Human-facing menu labels, keyed by action. */
export const ACTION_LABELS: Record<NodeAction, string> = {
  open_url: "Open",
  edit_title: "Edit title",
  change_tags: "Change tags",
  remove: "Remove",
  add_to_collection: "Add to collection",
  rename_tag: "Rename tag",
  center_here: "Center here",
};

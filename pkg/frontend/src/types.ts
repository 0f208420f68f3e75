// JSON shapes of the backend endpoints, mirrored field for field.

export type NodeKind = "tag" | "resource";
export type Locality = "local" | "global";
export type ViewName = "personal" | "social";
export type ModeName = "list" | "viz";

export type ActionName =
  | "tag_select"
  | "resource_select"
  | "edit"
  | "add"
  | "remove"
  | "view_switch"
  | "filter_change"
  | "mode_switch"
  | "other";

export interface TripleDto {
  user: string;
  tag: string;
  resource: string;
  created_at: number;
}

export interface GraphNodeDto {
  kind: NodeKind;
  id: string;
  locality: Locality;
  weight: number;
  title: string | null;
  is_center: boolean;
}

export interface ContextGraphDto {
  centers: { kind: NodeKind; id: string }[];
  nodes: GraphNodeDto[];
  edges: [number, number][]; // [tag index, resource index]
}

export interface SizedTagDto {
  label: string;
  count: number;
  size: number;
}

export interface ResourceRowDto {
  url: string;
  weight: number;
  title: string | null;
}

export interface ScoredTagDto {
  label: string;
  score: number;
}

export interface ScoredResourceDto {
  url: string;
  score: number;
}

export interface ClickEventDto {
  at: number;
  mode: ModeName;
  action: ActionName;
  user?: string;
}

export interface ModeStatsDto {
  n_sessions: number;
  mean_duration_sec: number;
  mean_clicks: number;
  content_fraction: number;
  switch_fraction: number;
}

export interface StatsDto {
  list: ModeStatsDto;
  viz: ModeStatsDto;
}

/** Query knobs for /api/context, camel-cased for the client. */
export interface FilterQuery {
  depth?: number;
  maxNeighbors?: number;
  maxNodes?: number;
  extraTags?: string[];
}

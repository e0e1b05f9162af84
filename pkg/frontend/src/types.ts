// JSON schemas shared with the planning service (plan format version 1).

export interface RectJson {
  min_x: number;
  min_y: number;
  width: number;
  height: number;
}

export interface LegJson {
  t_start: number;
  t_end: number;
  from: RectJson;
  to: RectJson;
  direction: string;
}

export type Keyframe = [number, number, number]; // t, min_x, min_y

export interface MovementJson {
  label_id: string;
  from_slot: string;
  to_slot: string;
  axis_order: string;
  start_time: number;
  duration: number;
  legs: LegJson[];
  keyframes: Keyframe[];
}

export interface PlacedJson {
  label_id: string;
  slot: string;
  rect: RectJson;
}

export interface OverlapJson {
  id_a: string;
  id_b: string;
  t_start: number;
  t_end: number;
  penalty: number;
}

export interface PlanJson {
  version: number;
  style: string;
  makespan: number;
  movement_span: number;
  phases: {
    removal: [number, number] | null;
    movement: [number, number];
    addition: [number, number] | null;
  };
  removals: PlacedJson[];
  additions: PlacedJson[];
  stationary: PlacedJson[];
  movements: MovementJson[];
  overlaps: OverlapJson[];
  pair_count: number;
  total_penalty: number;
}

export interface LabelInfoJson {
  slot: string;
  anchor: [number, number];
  rect: RectJson;
  text: string;
  lon: number;
  lat: number;
}

export type LabelingJson = Record<string, LabelInfoJson>;

export interface ViewJson {
  center_lon: number;
  center_lat: number;
  zoom: number;
  time_of_interest: string;
  screen: [number, number];
  viewport: RectJson;
}

export interface SessionCreatedJson {
  session_id: string;
  dataset_id: string;
  style: string;
  view: ViewJson;
  labeling: LabelingJson;
}

export interface MetricsJson {
  action: string;
  style: string;
  moved: number;
  added: number;
  removed: number;
  pair_count: number;
  total_penalty: number;
  movement_span: number;
  makespan: number;
  [key: string]: unknown;
}

export interface InteractResponseJson {
  session_id: string;
  view: ViewJson;
  labeling: LabelingJson;
  plan: PlanJson;
  metrics: MetricsJson;
}

export type ActionJson =
  | { type: "pan"; dlon: number; dlat: number }
  | { type: "zoom"; step: number }
  | { type: "time_shift"; minutes: number };

/** Trigger a browser download of a text file via a temporary anchor. */

export type Downloader = (filename: string, text: string) => void;

export function browserDownload(filename: string, text: string): void {
  const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

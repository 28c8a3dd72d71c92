/** Error types mirroring the core pipeline's error names. */

class NamedError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

export class InvalidConfig extends NamedError {}
export class VideoTooShort extends NamedError {}
export class InsufficientFrames extends NamedError {}
export class SequenceTooShort extends NamedError {}
export class ShapeMismatch extends NamedError {}
export class InvalidInput extends NamedError {}
export class BadMagic extends NamedError {}
export class TruncatedPayload extends NamedError {}
export class UnsupportedDtype extends NamedError {}

import io as stdio
import struct

import numpy as np
import pytest
from PIL import Image

from taylorvideo import (
    TaylorConfig,
    TaylorVideo,
    read_image_sequence,
    read_raw_gray,
    read_taylor,
    render_taylor_frame,
    rgb_to_gray,
    taylor_video,
    write_raw_gray,
    write_taylor,
    write_visualization,
)
from taylorvideo.errors import (
    BadMagic,
    DecodeError,
    DimensionMismatch,
    EmptyDirectory,
    InvalidGain,
    InvalidInput,
    TruncatedPayload,
    UnsupportedDtype,
)


def write_frames(directory, count, size=(8, 6), value_fn=None):
    directory.mkdir(exist_ok=True)
    for i in range(count):
        if value_fn is None:
            pixels = np.full((size[1], size[0], 3), (i * 13) % 256, dtype=np.uint8)
        else:
            pixels = value_fn(i)
        Image.fromarray(pixels, mode="RGB").save(directory / f"{i + 1:06d}.png")


class TestRgbToGray:
    @pytest.mark.parametrize(
        "rgb,expected",
        [((1.0, 1.0, 1.0), 1.0), ((0.0, 0.0, 0.0), 0.0), ((1.0, 0.0, 0.0), 0.299)],
    )
    def test_known_values(self, rgb, expected):
        frame = np.array(rgb).reshape(1, 1, 3)
        assert rgb_to_gray(frame)[0, 0] == expected

    def test_gray_input_unchanged_exactly(self):
        v = np.arange(256) / 255.0
        frame = np.stack([v, v, v], axis=-1).reshape(16, 16, 3)
        np.testing.assert_array_equal(rgb_to_gray(frame), frame[:, :, 0])

    def test_matches_weighted_sum(self):
        rng = np.random.default_rng(0)
        rgb = rng.random((20, 30, 3))
        naive = rgb[..., 0] * 0.299 + rgb[..., 1] * 0.587 + rgb[..., 2] * 0.114
        np.testing.assert_allclose(rgb_to_gray(rgb), naive, atol=1e-15)

    def test_rejects_wrong_shape(self):
        with pytest.raises(InvalidInput):
            rgb_to_gray(np.zeros((4, 4)))


class TestImageSequence:
    def test_reads_in_filename_order(self, tmp_path):
        def value_fn(i):
            return np.full((6, 8, 3), i * 10, dtype=np.uint8)

        write_frames(tmp_path / "frames", 19, value_fn=value_fn)
        video = read_image_sequence(tmp_path / "frames")
        assert video.shape == (19, 6, 8)
        np.testing.assert_allclose(video[:, 0, 0], np.arange(19) * 10 / 255.0)

    def test_single_image_is_valid(self, tmp_path):
        write_frames(tmp_path / "one", 1)
        assert read_image_sequence(tmp_path / "one").shape[0] == 1

    def test_rgb_mode(self, tmp_path):
        write_frames(tmp_path / "frames", 2)
        video = read_image_sequence(tmp_path / "frames", as_gray=False)
        assert video.shape == (2, 6, 8, 3)

    def test_empty_directory(self, tmp_path):
        (tmp_path / "empty").mkdir()
        with pytest.raises(EmptyDirectory):
            read_image_sequence(tmp_path / "empty")

    def test_dimension_mismatch_names_file(self, tmp_path):
        d = tmp_path / "mixed"
        d.mkdir()
        Image.new("RGB", (8, 8)).save(d / "a.png")
        Image.new("RGB", (16, 16)).save(d / "b.png")
        with pytest.raises(DimensionMismatch, match="b.png"):
            read_image_sequence(d)

    def test_decode_error(self, tmp_path):
        d = tmp_path / "bad"
        d.mkdir()
        (d / "frame.png").write_bytes(b"not a png at all")
        with pytest.raises(DecodeError):
            read_image_sequence(d)


class TestRawGray:
    def test_u8_round_trip(self, tmp_path):
        video = np.arange(2 * 3 * 4).reshape(2, 3, 4) / 255.0
        path = tmp_path / "v.tgry"
        write_raw_gray(path, video, dtype="u8")
        np.testing.assert_array_equal(read_raw_gray(path), video)

    def test_f32_round_trip(self, tmp_path):
        rng = np.random.default_rng(5)
        video = rng.random((3, 4, 5)).astype(np.float32).astype(np.float64)
        path = tmp_path / "v.tgry"
        write_raw_gray(path, video, dtype="f32")
        np.testing.assert_array_equal(read_raw_gray(path), video)

    def test_streams(self):
        video = np.full((2, 2, 2), 0.5)
        buf = stdio.BytesIO()
        write_raw_gray(buf, video, dtype="f32")
        buf.seek(0)
        np.testing.assert_array_equal(read_raw_gray(buf), video)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.tgry"
        path.write_bytes(b"XXXX" + b"\0" * 40)
        with pytest.raises(BadMagic):
            read_raw_gray(path)

    def test_unsupported_dtype(self, tmp_path):
        path = tmp_path / "odd.tgry"
        path.write_bytes(struct.pack("<4s3IB", b"TGRY", 1, 1, 1, 9) + b"\0")
        with pytest.raises(UnsupportedDtype):
            read_raw_gray(path)

    def test_truncated(self, tmp_path):
        path = tmp_path / "short.tgry"
        path.write_bytes(struct.pack("<4s3IB", b"TGRY", 4, 4, 2, 0) + b"\0" * 5)
        with pytest.raises(TruncatedPayload):
            read_raw_gray(path)


def small_taylor_video(seed=0, frames=6):
    rng = np.random.default_rng(seed)
    video = rng.random((frames, 3, 5))
    return taylor_video(video, TaylorConfig(block_len=4, n_terms=1))


class TestTaylorFile:
    def test_round_trip_identity_at_stored_precision(self, tmp_path):
        tv = small_taylor_video()
        path = tmp_path / "out.tlv"
        write_taylor(tv, path)
        loaded = read_taylor(path)
        assert loaded.data.dtype == np.float32
        np.testing.assert_array_equal(loaded.data, tv.data.astype(np.float32))
        assert loaded.config == tv.config

    def test_two_frame_1x1_round_trip(self, tmp_path):
        video = np.array([0.0, 0.1, 0.3, 0.6, 1.0]).reshape(5, 1, 1)
        tv = taylor_video(video, TaylorConfig(block_len=4, n_terms=1))
        path = tmp_path / "tiny.tlv"
        write_taylor(tv, path)
        loaded = read_taylor(path)
        np.testing.assert_array_equal(loaded.data, tv.data.astype(np.float32))

    def test_gray_augment_flag_round_trips(self, tmp_path):
        video = np.random.default_rng(1).random((6, 2, 2))
        tv = taylor_video(video, TaylorConfig(block_len=4, n_terms=1, gray_augment=True))
        path = tmp_path / "aug.tlv"
        write_taylor(tv, path)
        assert read_taylor(path).config.gray_augment is True

    def test_write_then_read_twice_is_stable(self, tmp_path):
        tv = small_taylor_video(3)
        p1, p2 = tmp_path / "a.tlv", tmp_path / "b.tlv"
        write_taylor(tv, p1)
        write_taylor(read_taylor(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.tlv"
        path.write_bytes(b"XXXX" + b"\0" * 64)
        with pytest.raises(BadMagic):
            read_taylor(path)

    def test_truncated_payload(self, tmp_path):
        tv = small_taylor_video(4, frames=19)  # 16 frames
        path = tmp_path / "full.tlv"
        write_taylor(tv, path)
        data = path.read_bytes()
        frame_bytes = 3 * tv.height * tv.width * 4
        short = tmp_path / "short.tlv"
        short.write_bytes(data[:-frame_bytes])  # header still claims 16 frames
        with pytest.raises(TruncatedPayload):
            read_taylor(short)

    def test_unsupported_dtype(self, tmp_path):
        header = struct.pack("<4s4IBBH3I", b"TLV1", 1, 1, 3, 1, 7, 0, 0, 4, 1, 1)
        path = tmp_path / "odd.tlv"
        path.write_bytes(header + b"\0" * 12)
        with pytest.raises(UnsupportedDtype):
            read_taylor(path)


class TestRender:
    def test_zero_frame_magnitude_is_black(self):
        image = render_taylor_frame(np.zeros((3, 4, 4)), mode="magnitude")
        assert image.shape == (4, 4, 3)
        assert not image.any()

    def test_zero_frame_signed_is_mid_gray(self):
        image = render_taylor_frame(np.zeros((3, 4, 4)), mode="signed", gain=4.0)
        assert (image == 128).all()

    def test_signed_fixture(self):
        frame = np.array([0.5, -0.5, 0.0]).reshape(3, 1, 1)
        image = render_taylor_frame(frame, mode="signed", gain=1.0)
        assert tuple(image[0, 0]) == (191, 64, 128)

    def test_channel_mapping(self):
        frame = np.zeros((3, 1, 1))
        frame[0] = 0.25  # displacement -> red
        image = render_taylor_frame(frame, mode="magnitude", gain=4.0)
        assert tuple(image[0, 0]) == (255, 0, 0)

    def test_signed_quantization_recovers_values(self):
        rng = np.random.default_rng(9)
        gain = 2.0
        frame = rng.uniform(-0.5, 0.5, (3, 8, 8))  # v * gain within [-1, 1]
        image = render_taylor_frame(frame, mode="signed", gain=gain)
        decoded = (image.transpose(2, 0, 1) / 127.5 - 1.0) / gain
        assert np.abs(decoded - frame).max() <= 1.0 / (255.0 * gain)

    def test_invalid_gain(self):
        with pytest.raises(InvalidGain):
            render_taylor_frame(np.zeros((3, 2, 2)), gain=0.0)

    def test_invalid_mode(self):
        with pytest.raises(InvalidInput):
            render_taylor_frame(np.zeros((3, 2, 2)), mode="rainbow")


class TestVisualization:
    def test_writes_numbered_pngs(self, tmp_path):
        tv = small_taylor_video(7, frames=7)
        paths = write_visualization(tv, tmp_path / "viz")
        assert [p.name for p in paths] == [
            f"taylor_{i:06d}.png" for i in range(tv.num_frames)
        ]
        with Image.open(paths[0]) as img:
            assert img.size == (tv.width, tv.height)
